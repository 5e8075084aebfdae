#pragma once

#include <stdexcept>
#include <string>

namespace trapstab {

enum class ErrorCode {
  Domain,        // parameter outside its admissible set
  Overflow,      // integration produced non-finite values
  Eigensolver,   // eigenvalue extraction failed or residual too large
  Inconsistent,  // spectrum violates the symplectic pairing structure
  Io,
  Parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trapstab
