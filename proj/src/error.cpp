#include "thedra/error.hpp"

namespace thedra {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
        case ErrorCode::ZeroLength: return "ZeroLength";
        case ErrorCode::DegenerateHeights: return "DegenerateHeights";
        case ErrorCode::SignConsistency: return "SignConsistency";
        case ErrorCode::CollinearPolygon: return "CollinearPolygon";
        case ErrorCode::CollinearProfile: return "CollinearProfile";
        case ErrorCode::OffLine: return "OffLine";
        case ErrorCode::NonHorizontalRows: return "NonHorizontalRows";
        case ErrorCode::CoincidentPlanes: return "CoincidentPlanes";
        case ErrorCode::ParallelGenerators: return "ParallelGenerators";
        case ErrorCode::NotMolding: return "NotMolding";
        case ErrorCode::AxisDegenerate: return "AxisDegenerate";
        case ErrorCode::ZeroRadius: return "ZeroRadius";
        case ErrorCode::NotATHedron: return "NotATHedron";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::ConsecutiveParallelPlanes: return "ConsecutiveParallelPlanes";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::DegenerateFace: return "DegenerateFace";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::RadicandNegative: return "RadicandNegative";
        case ErrorCode::OneSidedOnly: return "OneSidedOnly";
        case ErrorCode::CompatibilityDrift: return "CompatibilityDrift";
        case ErrorCode::NonParallelInput: return "NonParallelInput";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace thedra
