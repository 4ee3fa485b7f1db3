#ifndef OSCGAUSS_ERRORS_HPP
#define OSCGAUSS_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace oscgauss {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point lies on the active branch cut of a branched function.
class OnCut : public Error {
 public:
  using Error::Error;
};

/// SCURVE branch mode requested without a traced curve.
class BranchCurveRequired : public Error {
 public:
  BranchCurveRequired() : Error("SCURVE branch mode requires a traced S-curve") {}
};

/// The requested tolerance cannot be reached at the working precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// A formal orthogonal polynomial does not exist (vanishing Hankel pivot).
class ExistenceFailure : public Error {
 public:
  ExistenceFailure(int degree, double pivot)
      : Error("orthogonal polynomial of degree " + std::to_string(degree) +
              " does not exist (pivot magnitude " + format_pivot(pivot) + ")"),
        degree_(degree),
        pivot_(pivot) {}

  int degree() const noexcept { return degree_; }
  double pivot() const noexcept { return pivot_; }

 private:
  static std::string format_pivot(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", p);
    return buf;
  }

  int degree_;
  double pivot_;
};

/// An iterative method (root finder, curve corrector, tracer) failed.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Quadrature node with vanishing derivative of the orthogonal polynomial.
class DegenerateNode : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Asymptotic formula evaluated outside its region of validity.
class RegionViolation : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole.
class PoleAt : public Error {
 public:
  using Error::Error;
};

/// Point lies on the boundary of a region whose membership was requested.
class OnBoundary : public Error {
 public:
  using Error::Error;
};

}  // namespace oscgauss

#endif  // OSCGAUSS_ERRORS_HPP
