#pragma once

#include <stdexcept>
#include <string>

namespace minimax {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or unsupported combination of inputs (CLI exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not deliver its contract (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Adaptive quadrature ran out of depth; the best estimate is still available.
class ToleranceNotMet : public NumericalError {
 public:
  ToleranceNotMet(const std::string& what, double best_estimate)
      : NumericalError(what), best_estimate_(best_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace minimax
