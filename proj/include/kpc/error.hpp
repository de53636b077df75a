#pragma once

#include <stdexcept>
#include <string>

namespace kpc {

enum class ErrorCode {
  NegativeOrZeroValue,
  IndexOutOfRange,
  SelfLoop,
  CapacityNegative,
  SizeMismatch,
  ParseError,
  IoError,
  LimitsInvalid,
  TooLargeForOracle,
  PartitionInvalid,
  InfeasibleStart,
  SpecInvalid,
};

/// Library-wide exception carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace kpc
