#pragma once

#include <stdexcept>
#include <string>

namespace annealtrack {

/// Bad argument values (dimension mismatches, out-of-range parameters).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Problem exceeds a hard size guard (enumeration or state-vector limits).
class SizeLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An association matrix violates the row/column assignment constraints.
class FeasibilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical tolerance could not be met (e.g. integrator norm drift).
class AccuracyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Spectrum degenerate where a nonzero gap is required.
class DegeneracyError : public std::runtime_error {
public:
  DegeneracyError(const std::string& what, double s_value)
      : std::runtime_error(what), s(s_value) {}
  double s;
};

/// A sampled run contained no feasible association state.
class EmptyPosteriorError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace annealtrack
