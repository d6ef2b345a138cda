#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace worldline {

enum class ErrorCode {
  NotHermitian,
  InvalidSize,
  DimensionMismatch,
  InvalidSpec,
  InvalidConfig,
  NotPowerOfTwo,
  QubitOutOfRange,
  IndexOutOfRange,
  SingularTime,
  StepUnderflow,
  InvalidTimes,
  InvalidArgument,
  NotVariational,
};

std::string_view error_name(ErrorCode code) noexcept;

// True for errors caused by the caller's configuration rather than by the
// numerics. The CLI maps these to exit code 2 and everything else to 3.
bool is_config_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace worldline
