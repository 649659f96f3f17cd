#ifndef QBETHE_ERRORS_HPP
#define QBETHE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qbethe {

enum class ErrorCode {
    BackendMismatch,
    DivisionByZero,
    EvaluationAtPole,
    NotAPole,
    HigherOrderPole,
    ShapeMismatch,
    SingularParameters,
    ParameterCollision,
    TooManyVariables,
    NonInvertibleBlock,
    WhitelistAmbiguity,
    PoleNotCandidate,
    ConfigError,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::BackendMismatch: return "BackendMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::EvaluationAtPole: return "EvaluationAtPole";
        case ErrorCode::NotAPole: return "NotAPole";
        case ErrorCode::HigherOrderPole: return "HigherOrderPole";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::SingularParameters: return "SingularParameters";
        case ErrorCode::ParameterCollision: return "ParameterCollision";
        case ErrorCode::TooManyVariables: return "TooManyVariables";
        case ErrorCode::NonInvertibleBlock: return "NonInvertibleBlock";
        case ErrorCode::WhitelistAmbiguity: return "WhitelistAmbiguity";
        case ErrorCode::PoleNotCandidate: return "PoleNotCandidate";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* name() const { return error_name(code_); }

private:
    ErrorCode code_;
};

} // namespace qbethe

#endif
