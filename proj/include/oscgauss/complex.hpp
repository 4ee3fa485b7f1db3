#ifndef OSCGAUSS_COMPLEX_HPP
#define OSCGAUSS_COMPLEX_HPP

#include <complex>
#include <ostream>

#include "precision.hpp"

namespace oscgauss {

/// Multiprecision complex number.
///
/// std::complex is unspecified for non-builtin scalars, and the branch
/// conventions used throughout the library must be exact, so the elementary
/// functions are written out here. All functions take principal branches:
/// arg in (-pi, pi], log cut on (-inf, 0], sqrt with nonnegative real part
/// and sqrt(-x) = +i sqrt(x) for x > 0.
class Complex {
 public:
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(const Real& re) : re_(re), im_(Real(0, re.precision())) {}

  static Complex zero(const PrecisionContext& ctx) { return {ctx.zero(), ctx.zero()}; }
  static Complex one(const PrecisionContext& ctx) { return {ctx.one(), ctx.zero()}; }
  static Complex i(const PrecisionContext& ctx) { return {ctx.zero(), ctx.one()}; }
  static Complex from(const PrecisionContext& ctx, double re, double im = 0.0) {
    return {ctx.real(re), ctx.real(im)};
  }

  const Real& re() const noexcept { return re_; }
  const Real& im() const noexcept { return im_; }
  Real& re() noexcept { return re_; }
  Real& im() noexcept { return im_; }

  unsigned precision() const { return std::max(re_.precision(), im_.precision()); }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    // Smith's algorithm keeps the intermediate magnitudes bounded.
    if (boost::multiprecision::abs(o.re_) >= boost::multiprecision::abs(o.im_)) {
      Real r = o.im_ / o.re_;
      Real d = o.re_ + o.im_ * r;
      Real nr = (re_ + im_ * r) / d;
      im_ = (im_ - re_ * r) / d;
      re_ = std::move(nr);
    } else {
      Real r = o.re_ / o.im_;
      Real d = o.re_ * r + o.im_;
      Real nr = (re_ * r + im_) / d;
      im_ = (im_ * r - re_) / d;
      re_ = std::move(nr);
    }
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re_ *= s;
    im_ *= s;
    return *this;
  }
  Complex& operator/=(const Real& s) {
    re_ /= s;
    im_ /= s;
    return *this;
  }
  Complex& operator*=(long s) {
    re_ *= s;
    im_ *= s;
    return *this;
  }
  Complex& operator/=(long s) {
    re_ /= s;
    im_ /= s;
    return *this;
  }

  Complex operator-() const { return {-re_, -im_}; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& s) { return a *= s; }
  friend Complex operator*(const Real& s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, const Real& s) { return a /= s; }
  friend Complex operator*(Complex a, long s) { return a *= s; }
  friend Complex operator*(long s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, long s) { return a /= s; }
  friend Complex operator+(Complex a, const Real& s) {
    a.re_ += s;
    return a;
  }
  friend Complex operator+(const Real& s, Complex a) {
    a.re_ += s;
    return a;
  }
  friend Complex operator-(Complex a, const Real& s) {
    a.re_ -= s;
    return a;
  }
  friend Complex operator-(const Real& s, const Complex& a) { return {s - a.re_, -a.im_}; }
  friend Complex operator+(Complex a, long s) {
    a.re_ += s;
    return a;
  }
  friend Complex operator-(Complex a, long s) {
    a.re_ -= s;
    return a;
  }
  friend Complex operator-(long s, const Complex& a) { return {s - a.re_, -a.im_}; }

  /// Exact equality of both components.
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << '(' << to_decimal(z.re_) << ", " << to_decimal(z.im_) << ')';
  }

 private:
  Real re_;
  Real im_;
};

using MPComplex = Complex;

inline Complex conj(const Complex& z) { return {z.re(), -z.im()}; }
inline Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }
inline Real abs(const Complex& z) { return boost::multiprecision::sqrt(norm(z)); }
inline Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im(), z.re()); }

/// Multiplication by i.
inline Complex times_i(const Complex& z) { return {-z.im(), z.re()}; }

inline Complex polar(const Real& r, const Real& theta) {
  return {r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta)};
}

inline Complex exp(const Complex& z) { return polar(boost::multiprecision::exp(z.re()), z.im()); }

/// Principal logarithm. Arg of a negative real with +0 or -0 imaginary part is +pi.
inline Complex log(const Complex& z) {
  Real a = arg(z);
  if (z.im() == 0 && z.re() < 0) a = boost::multiprecision::abs(a);
  return {boost::multiprecision::log(norm(z)) / 2, a};
}

/// Principal square root; the negative real axis maps to the positive imaginary axis.
inline Complex sqrt(const Complex& z) {
  using boost::multiprecision::sqrt;
  Real r = abs(z);
  if (r == 0) return {r, r};
  if (z.re() >= 0) {
    Real t = sqrt((r + z.re()) / 2);
    return {t, z.im() / (2 * t)};
  }
  Real t = sqrt((r - z.re()) / 2);
  Real u = boost::multiprecision::abs(z.im()) / (2 * t);
  return {u, z.im() < 0 ? Real(-t) : t};
}

/// Principal power z^a = exp(a log z); 0^a = 0 for a > 0.
inline Complex pow(const Complex& z, const Real& a) {
  if (z.re() == 0 && z.im() == 0) return z;
  return exp(log(z) * a);
}

/// Integer power by repeated squaring (exact branch-free).
inline Complex pow(Complex z, long k) {
  if (k < 0) {
    Complex one(Real(1, z.precision()), Real(0, z.precision()));
    return one / pow(std::move(z), -k);
  }
  Complex result(Real(1, z.precision()), Real(0, z.precision()));
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

inline Complex cos(const Complex& z) {
  using namespace boost::multiprecision;
  return {cos(z.re()) * cosh(z.im()), -sin(z.re()) * sinh(z.im())};
}

inline Complex sin(const Complex& z) {
  using namespace boost::multiprecision;
  return {sin(z.re()) * cosh(z.im()), cos(z.re()) * sinh(z.im())};
}

/// Distance |a - b|.
inline Real dist(const Complex& a, const Complex& b) { return abs(a - b); }

/// Rounds both components to the context precision.
inline Complex round_to(const Complex& z, const PrecisionContext& ctx) {
  return {ctx.real(z.re()), ctx.real(z.im())};
}

inline std::complex<double> to_cdouble(const Complex& z) {
  return {to_double(z.re()), to_double(z.im())};
}

}  // namespace oscgauss

#endif  // OSCGAUSS_COMPLEX_HPP
