#pragma once

#include <stdexcept>
#include <string>

namespace burgers {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments: violated preconditions, non-finite samples, mismatched grids.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The grid cannot represent the request (aliasing, spectral blocking).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A time integration produced non-finite values.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what, int iterate = -1)
      : Error(what), iterate_(iterate) {}
  /// Picard iterate index at which the solve failed, or -1 outside the scheme.
  int iterate() const noexcept { return iterate_; }

 private:
  int iterate_;
};

/// A probe or check was asked to work outside the window where it is meaningful.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Numerical oracle failure (positivity loss, convention mismatch).
class OracleError : public Error {
 public:
  using Error::Error;
};

/// The Cole-Hopf transform constant does not reproduce a Burgers solution.
class ConventionError : public OracleError {
 public:
  ConventionError(const std::string& what, double best_lambda)
      : OracleError(what), best_lambda_(best_lambda) {}
  double best_lambda() const noexcept { return best_lambda_; }

 private:
  double best_lambda_;
};

}  // namespace burgers
