#pragma once

#include <stdexcept>
#include <string>

namespace fermatball {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse = 2,
  Domain = 3,
  Budget = 4,
  Numerical = 5,
  Internal = 6,
};

// Single exception type for the core; the C API maps `code()` onto fb_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fermatball
