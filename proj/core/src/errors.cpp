#include "worldline/errors.hpp"

namespace worldline {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::QubitOutOfRange: return "QubitOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SingularTime: return "SingularTime";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::InvalidTimes: return "InvalidTimes";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotVariational: return "NotVariational";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidConfig:
    case ErrorCode::NotVariational:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code) {}

}  // namespace worldline
