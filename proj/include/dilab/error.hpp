#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dilab
{

enum class ErrorCode
{
    InvalidArgument,
    NonConvergent,
    MassTooLarge,
    DegenerateTemporalKernel,
    ScaleOutOfRange,
    TachyonicCoefficients,
    NotAnEigenstate,
    MomentumTooLarge,
    NoRealRoot,
    SuperluminalVelocity,
    MasslessSpinor,
    SymmetryViolation,
    DegenerateQ1,
    ConstraintViolated,
    DegenerateFit,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code);

//! Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::MassTooLarge: return "MassTooLarge";
    case ErrorCode::DegenerateTemporalKernel: return "DegenerateTemporalKernel";
    case ErrorCode::ScaleOutOfRange: return "ScaleOutOfRange";
    case ErrorCode::TachyonicCoefficients: return "TachyonicCoefficients";
    case ErrorCode::NotAnEigenstate: return "NotAnEigenstate";
    case ErrorCode::MomentumTooLarge: return "MomentumTooLarge";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::SuperluminalVelocity: return "SuperluminalVelocity";
    case ErrorCode::MasslessSpinor: return "MasslessSpinor";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::DegenerateQ1: return "DegenerateQ1";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace dilab
