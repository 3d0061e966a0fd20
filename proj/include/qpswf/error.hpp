#pragma once

#include <stdexcept>
#include <string>

namespace qpswf {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or configuration value violates its documented range.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A lattice window does not cover the exponents an operation needs.
class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

/// Closed-form difference quotient requested at (nearly) coincident arguments.
class DegenerateArguments : public Error {
 public:
  using Error::Error;
};

class SolverNoConvergence : public Error {
 public:
  using Error::Error;
};

class ZeroFunction : public Error {
 public:
  using Error::Error;
};

/// Malformed or unreadable input file; carries the offending line when known.
class InputFileError : public Error {
 public:
  explicit InputFileError(const std::string& what, int line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace qpswf
