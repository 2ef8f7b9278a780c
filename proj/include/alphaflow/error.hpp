#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alphaflow {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    // complex_core
    NonManifold,
    BadWeight,
    DegenerateFace,
    DuplicateFace,
    DegenerateTet,
    DuplicateTet,
    EmptyOrFullSubset,
    EmptySubset,
    // packing2d / area elements
    DegenerateTriangle,
    AreaElementFailure,
    DualPointOutside,
    // spectral
    NotPSD,
    KernelMismatch,
    EvaluationFailure,
    // flows
    ConfigError,
    QuadratureFailure,
    // thurston_check
    TooManyVertices,
    // packing3d / flow3d
    NonpositiveRadius,
    InadmissibleMetric,
    FDNearBoundary,
    AlphaExcluded,
    NotConstantCurvature,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace alphaflow
