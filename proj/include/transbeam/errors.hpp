#pragma once

#include <stdexcept>
#include <string>

namespace transbeam {

enum class ErrorCode {
    InvalidConfig,
    DegenerateGeometry,
    MeshTooCoarse,
    BcIncompatible,
    OutOfSegment,
    OrderUnsupported,
    NewtonDiverged,
    LinearSolveSingular,
    SingularTangent,
    CountTooLarge,
    InfeasibleMultiplier,
    ConstraintViolated,
    SearchExhausted,
    ZeroDenominator,
    AttractorModeViolation,
    IoFailure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace transbeam
