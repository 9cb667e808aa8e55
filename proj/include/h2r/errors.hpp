#pragma once

#include <stdexcept>
#include <string>

namespace h2r {

// Error hierarchy. Validation failures (bad parameters, malformed input)
// derive from ValidationError; numerical breakdowns from NumericalError.
// The CLI maps these to exit codes 2 and 3 respectively.

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : ValidationError {
    using ValidationError::ValidationError;
};
struct CoincidentPoints : ValidationError {
    using ValidationError::ValidationError;
};
struct InvalidParams : ValidationError {
    using ValidationError::ValidationError;
};
struct ShapeError : ValidationError {
    using ValidationError::ValidationError;
};
struct OutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct WindowOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct ResolutionTooLow : ValidationError {
    using ValidationError::ValidationError;
};
struct SampleTooShort : ValidationError {
    using ValidationError::ValidationError;
};
struct IllPosedData : ValidationError {
    using ValidationError::ValidationError;
};
struct CurveTouchesCaps : ValidationError {
    using ValidationError::ValidationError;
};
struct MalformedCurve : ValidationError {
    using ValidationError::ValidationError;
};
struct MeshTooSmall : ValidationError {
    using ValidationError::ValidationError;
};
struct DegenerateGenerator : ValidationError {
    using ValidationError::ValidationError;
};

struct QuadratureFailure : NumericalError {
    using NumericalError::NumericalError;
};
struct NotConverged : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace h2r
