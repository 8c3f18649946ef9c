#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thedra {

enum class ErrorCode {
    AngleOutOfRange,
    ZeroLength,
    DegenerateHeights,
    SignConsistency,
    CollinearPolygon,
    CollinearProfile,
    OffLine,
    NonHorizontalRows,
    CoincidentPlanes,
    ParallelGenerators,
    NotMolding,
    AxisDegenerate,
    ZeroRadius,
    NotATHedron,
    OutOfRange,
    ConsecutiveParallelPlanes,
    ShapeMismatch,
    DegenerateFace,
    OutOfDomain,
    RadicandNegative,
    OneSidedOnly,
    CompatibilityDrift,
    NonParallelInput,
    InvalidArgument,
    SchemaViolation,
    InvariantViolation,
    IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type. `field` names the
// offending datum when there is one, e.g. "z[2]" or "phi[0]".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string field = {})
        : std::runtime_error(message), code_(code), field_(std::move(field)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::string field_;
};

}  // namespace thedra
