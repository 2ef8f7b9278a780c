#include "alphaflow/error.hpp"

namespace alphaflow {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::BadWeight: return "BadWeight";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::DuplicateFace: return "DuplicateFace";
    case ErrorCode::DegenerateTet: return "DegenerateTet";
    case ErrorCode::DuplicateTet: return "DuplicateTet";
    case ErrorCode::EmptyOrFullSubset: return "EmptyOrFullSubset";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::AreaElementFailure: return "AreaElementFailure";
    case ErrorCode::DualPointOutside: return "DualPointOutside";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::KernelMismatch: return "KernelMismatch";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::NonpositiveRadius: return "NonpositiveRadius";
    case ErrorCode::InadmissibleMetric: return "InadmissibleMetric";
    case ErrorCode::FDNearBoundary: return "FDNearBoundary";
    case ErrorCode::AlphaExcluded: return "AlphaExcluded";
    case ErrorCode::NotConstantCurvature: return "NotConstantCurvature";
    }
    return "Unknown";
}

} // namespace alphaflow
