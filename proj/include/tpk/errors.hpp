#pragma once

#include <stdexcept>
#include <string>

namespace tpk {

// Error taxonomy used across the library.  Everything derives from
// tpk::Error so callers can catch the whole family at once; the CLI maps
// ConfigError to exit code 2, ResourceError to exit code 3, and treats the
// rest as computation failures.

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch between operands (matrix products, series of unequal order).
class DimensionError : public Error {
public:
  using Error::Error;
};

// Out-of-range row/column/window access.
class IndexError : public Error {
public:
  using Error::Error;
};

// Input outside the mathematical domain of an operation: parameters not in
// [0,1), log of a series with constant term != 1, rational mode asked to
// evaluate something irrational, and the like.
class DomainError : public Error {
public:
  using Error::Error;
};

// A matrix that must be inverted is singular (exactly, or numerically with
// the pivot threshold documented in matrix.hpp).
class SingularMatrixError : public Error {
public:
  explicit SingularMatrixError(const std::string& what,
                               double conditionEstimate = 0.0)
      : Error(what), conditionEstimate(conditionEstimate) {}
  double conditionEstimate;
};

// A truncated expansion was asked for data beyond the window it holds.
class TruncationError : public Error {
public:
  using Error::Error;
};

// An iterative procedure (eigenvalue QR, adaptive window growth) exhausted
// its iteration budget.
class ConvergenceError : public Error {
public:
  explicit ConvergenceError(const std::string& what, int iterations = 0)
      : Error(what), iterations(iterations) {}
  int iterations;
};

// A request exceeds the documented enumeration / truncation caps.
class ResourceError : public Error {
public:
  using Error::Error;
};

// Malformed configuration input (unknown keys, unparsable values).
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace tpk
