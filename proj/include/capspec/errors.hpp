#pragma once

#include <stdexcept>
#include <string>

namespace capspec {

/// Base of every error the library throws. `exit_code()` is the CLI taxonomy:
/// 2 invalid input, 3 degenerate spectrum, 4 unsupported query.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
};

/// Precondition or invariant violation on user-supplied data.
class DomainError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Ties in a Reeb spectrum where a unique orbit was required.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// Query outside what the library decides exactly (e.g. inclusion of an
/// unsupported pair, volume of a non-canonical half-space region).
class Unsupported : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace capspec
