#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bergman {

// Base class so callers can catch everything from this library at once.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument values (out-of-range parameters, malformed weight data).
struct ParameterError : Error {
  using Error::Error;
};

// Evaluation request outside the domain of convergence or definition.
struct DomainError : Error {
  using Error::Error;
};

// A constructed object failed a structural requirement, e.g. a Gram matrix
// that is not positive definite or a weight that is not positive.
struct ValidityError : Error {
  using Error::Error;
};

// Requested accuracy could not be certified; carries the best value found
// and the bound that was actually achieved.
struct AccuracyError : Error {
  std::complex<double> best;
  double achieved_bound;
  AccuracyError(const std::string& what, std::complex<double> best_value, double bound)
      : Error(what), best(best_value), achieved_bound(bound) {}
};

// Least-squares fit could not be carried out (too few samples, rank-deficient
// design matrix, degenerate search window).
struct FitError : Error {
  using Error::Error;
};

}  // namespace bergman
