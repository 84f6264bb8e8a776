#pragma once

#include <map>
#include <string>
#include <vector>

#include "cylcert/rational.hpp"

namespace cylcert {

enum class Verdict { Pass, Fail, Inconclusive, Warn };

const char* verdict_name(Verdict v);

struct StageResult {
    std::string stage;
    Verdict verdict = Verdict::Pass;
    std::string detail;
};

/// Fixed pipeline stage order.
extern const std::vector<std::string> kStages;

struct VerificationReport {
    std::string id;
    std::vector<StageResult> stages;
    std::map<std::string, Rat> witness;  // effectivity witness, when that stage passed
    bool overall_pass = false;

    const StageResult* stage(const std::string& name) const;
    /// Name of the first stage with verdict Fail, or empty.
    std::string first_fail() const;
};

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Inconclusive: return "Inconclusive";
        case Verdict::Warn: return "Warn";
    }
    return "?";
}

}  // namespace cylcert
