#ifndef OSCGAUSS_PRECISION_HPP
#define OSCGAUSS_PRECISION_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>

#include "errors.hpp"

namespace oscgauss {

/// Arbitrary-precision real. Every value carries its own precision; arithmetic
/// between values yields the larger of the operand precisions. Values are
/// always created through a PrecisionContext so the global MPFR default
/// precision is never consulted.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Decimal working precision plus guard digits.
///
/// Arithmetic is carried out with `digits()` significant decimal digits;
/// results are certified to `tol() = 10^-(digits - guard)`.
class PrecisionContext {
 public:
  static constexpr unsigned kMinDigits = 20;

  explicit PrecisionContext(unsigned digits = 50, unsigned guard = 5)
      : digits_(digits), guard_(guard) {
    if (digits_ < kMinDigits) {
      throw DomainError("working precision must be at least 20 digits, got " +
                        std::to_string(digits_));
    }
    if (guard_ >= digits_) {
      throw DomainError("guard digits must be smaller than working digits");
    }
  }

  unsigned digits() const noexcept { return digits_; }
  unsigned guard() const noexcept { return guard_; }
  /// Number of digits certified by operations under this context.
  unsigned certified_digits() const noexcept { return digits_ - guard_; }

  Real tol() const { return pow10(-static_cast<int>(certified_digits())); }

  Real real(long v) const { return Real(v, digits_); }
  Real real(int v) const { return Real(v, digits_); }
  Real real(unsigned v) const { return Real(v, digits_); }
  Real real(double v) const { return Real(v, digits_); }
  Real real(std::string_view s) const { return Real(std::string(s), digits_); }
  /// Rounds (or widens) an existing value to this context's precision.
  Real real(const Real& v) const { return Real(v, digits_); }

  Real zero() const { return Real(0, digits_); }
  Real one() const { return Real(1, digits_); }

  Real pi() const {
    Real r(0, digits_);
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
  }

  Real ln2() const {
    Real r(0, digits_);
    mpfr_const_log2(r.backend().data(), MPFR_RNDN);
    return r;
  }

  Real pow10(int e) const {
    Real r(10, digits_);
    return boost::multiprecision::pow(r, Real(e, digits_));
  }

  /// Same guard, different working digits.
  PrecisionContext with_digits(unsigned digits) const {
    return PrecisionContext(digits, std::min(guard_, digits - 1));
  }

  bool operator==(const PrecisionContext&) const = default;

 private:
  unsigned digits_;
  unsigned guard_;
};

/// Decimal digits needed to round-trip a value of `digits10` precision.
inline unsigned roundtrip_digits(unsigned digits10) { return digits10 + 3; }

inline std::string to_decimal(const Real& x) {
  if (boost::multiprecision::isinf(x)) return x < 0 ? "-inf" : "inf";
  if (boost::multiprecision::isnan(x)) return "nan";
  return x.str(roundtrip_digits(x.precision()), std::ios_base::scientific);
}

/// Parses a decimal string produced by to_decimal at the given precision.
inline Real from_decimal(std::string_view s, unsigned digits10) {
  if (s == "inf") return std::numeric_limits<Real>::infinity();
  if (s == "-inf") return -std::numeric_limits<Real>::infinity();
  return Real(std::string(s), digits10);
}

/// Magnitude as a double, for heuristics and reporting only.
inline double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace oscgauss

#endif  // OSCGAUSS_PRECISION_HPP
