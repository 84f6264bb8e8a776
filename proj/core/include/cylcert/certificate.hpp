#pragma once

#include <map>
#include <string>
#include <vector>

#include "cylcert/divisor.hpp"
#include "cylcert/dynkin.hpp"

namespace cylcert {

/// One summand of the ample decomposition: coeff * pullback(curve) for curve
/// references, or coeff * alias for declared 0-curve classes.
struct AmpleSummand {
    AffineExpr coeff;   // a parameter symbol or a rational
    std::string curve;  // exactly one of curve / alias is set
    std::string alias;
};

struct SurgeryStep {
    std::vector<std::string> at;  // curves through the blown-up point
    std::string new_name;         // the exceptional curve
};

struct FibrationClaim {
    std::vector<std::map<std::string, int>> fibers;  // curve -> multiplicity
    std::string section;
    int hirzebruch_n = 0;
};

struct ErrataNote {
    std::string location;
    std::string verbatim;
    std::string corrected;
};

/// One lemma case: everything the verifier needs to replay the construction.
struct Certificate {
    std::string id;
    std::string lemma;
    int degree = 1;
    CurveConfig cfg;
    std::vector<SingularityDecl> sings;
    std::string fujita_type = "B";
    std::vector<std::string> parameters;
    ParamDomain domain;
    std::vector<AmpleSummand> ample;
    std::map<std::string, DivisorExpr> aliases;
    DivisorExpr l;  // kappa = 0 by construction
    std::vector<SurgeryStep> script;
    FibrationClaim fib;
    std::vector<ErrataNote> errata;

    bool is_exceptional(const std::string& name) const {
        for (const auto& s : sings)
            for (const auto& c : s.exc_curves)
                if (c == name) return true;
        return false;
    }
};

}  // namespace cylcert
