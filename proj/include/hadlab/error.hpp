#pragma once

#include <stdexcept>
#include <string>

namespace hadlab {

enum class ErrorKind {
  Resource,      // requested size exceeds the configured maximum order
  SizeMismatch,  // operand shapes disagree
  Parse,         // malformed text input
  Domain,        // argument outside the operation's precondition
  Singular,      // an invertible operand was required
  Inapplicable,  // closed-form hypothesis not met (e.g. ||A|| >= sqrt(N))
  NotOrthogonal, // candidate matrix is not a rescaled orthogonal matrix
  Convergence,   // iterative routine hit its iteration cap
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hadlab
