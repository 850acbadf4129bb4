#ifndef FORECAST_ERRORS_HPP
#define FORECAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace forecast {

// User-facing errors: bad input data or configuration. The CLI maps these
// to exit code 1.
struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : UserError {
    using UserError::UserError;
};

struct ParseError : UserError {
    using UserError::UserError;
};

struct EmptyInput : UserError {
    using UserError::UserError;
};

struct GapError : UserError {
    using UserError::UserError;
};

struct DegenerateSeries : UserError {
    using UserError::UserError;
};

struct InsufficientData : UserError {
    using UserError::UserError;
};

struct DomainError : UserError {
    using UserError::UserError;
};

struct IoError : UserError {
    using UserError::UserError;
};

// Internal errors: violated invariants or numerical breakdown. Exit code 2.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : InternalError {
    using InternalError::InternalError;
};

struct NumericalError : InternalError {
    using InternalError::InternalError;
};

struct FitDiverged : InternalError {
    using InternalError::InternalError;
};

struct DivergenceError : InternalError {
    using InternalError::InternalError;
};

struct StateError : InternalError {
    using InternalError::InternalError;
};

}  // namespace forecast

#endif
