#pragma once

#include <stdexcept>
#include <string>

namespace whankel {

enum class ErrorCode {
  Domain = 1,         // argument outside the mathematical domain
  Overflow = 2,       // intermediate quantity not representable
  NonConvergence = 3, // iterative procedure did not reach tolerance
  Budget = 4,         // quadrature panel budget exhausted
  Divergent = 5,      // integral declared divergent
  InvalidArgument = 6,
  Cancellation = 7,   // series would lose too many digits
  Unsupported = 8,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace whankel
