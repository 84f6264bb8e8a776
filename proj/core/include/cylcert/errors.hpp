#pragma once

#include <stdexcept>
#include <string>

namespace cylcert {

enum class ErrorCode {
    UnknownCurve,
    BothSidesParametric,
    Underdetermined,
    MissingParameter,
    SingularGram,
    ExceptionalRef,
    NotThroughPoint,
    NameCollision,
    NotMinusOne,
    Stuck,
    LeftoverCurve,
    SyntaxError,
    SchemaError,
    NonCanonicalRational,
};

const char* error_code_name(ErrorCode c);

/// All operation failures surface as this one exception type; the pipeline
/// converts them into stage verdicts.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::UnknownCurve: return "UnknownCurve";
        case ErrorCode::BothSidesParametric: return "BothSidesParametric";
        case ErrorCode::Underdetermined: return "Underdetermined";
        case ErrorCode::MissingParameter: return "MissingParameter";
        case ErrorCode::SingularGram: return "SingularGram";
        case ErrorCode::ExceptionalRef: return "ExceptionalRef";
        case ErrorCode::NotThroughPoint: return "NotThroughPoint";
        case ErrorCode::NameCollision: return "NameCollision";
        case ErrorCode::NotMinusOne: return "NotMinusOne";
        case ErrorCode::Stuck: return "Stuck";
        case ErrorCode::LeftoverCurve: return "LeftoverCurve";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::NonCanonicalRational: return "NonCanonicalRational";
    }
    return "Error";
}

}  // namespace cylcert
