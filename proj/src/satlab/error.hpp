#pragma once

#include <stdexcept>
#include <string>

namespace satlab {

enum class ErrorKind {
  Structural,    // operands from different algebras, malformed shapes
  Precondition,  // an operation's input contract does not hold
  Construction,  // axioms fail while building a group, action or Hopf algebra
  Capacity,      // configured bounds or graph windows are exceeded
  Consistency,   // independent computations of one quantity disagree
  Parse,         // input text is not valid JSON
  Schema,        // JSON is valid but does not describe a problem
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace satlab
