#ifndef OSCGAUSS_SPECIAL_HPP
#define OSCGAUSS_SPECIAL_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "scurve.hpp"

namespace oscgauss {

/// Which cut (z^2 - 1)^{1/2} carries.
enum class BranchMode {
  PRINCIPAL,  ///< cut on [-1, 1]
  SCURVE,     ///< cut on a traced S-curve
};

/// Side of a cut: +1 is the left of the oriented cut (the upper side of [-1, 1]).
enum class Side { PLUS = 1, MINUS = -1 };

namespace detail {

inline bool near_endpoint(const Complex& z, const Real& tol) {
  return dist(z, Complex(Real(1, z.precision()))) <= tol ||
         dist(z, Complex(Real(-1, z.precision()))) <= tol;
}

inline bool on_segment(const Complex& z, const Real& tol) {
  return boost::multiprecision::abs(z.im()) <= tol && z.re() > -1 && z.re() < 1;
}

/// Principal-branch product sqrt(z - 1) sqrt(z + 1), cut on [-1, 1].
inline Complex principal_root(const Complex& z) { return sqrt(z - 1L) * sqrt(z + 1L); }

/// -i sqrt(1 - z^2): the root that is analytic across (-1, 1) and coincides
/// with the principal root in the lower half plane.
inline Complex lower_form(const Complex& z) {
  Complex w = sqrt(1L - z * z);
  return {w.im(), -w.re()};
}

}  // namespace detail

/// (z^2 - 1)^{1/2}, asymptotic to z at infinity.
///
/// PRINCIPAL puts the cut on [-1, 1]. SCURVE puts it on the curve: the value is
/// the principal one negated inside the region bounded by [-1, 1] and the curve.
/// The endpoints +-1 are admissible (the value there is 0).
inline Complex sqrt_zsq_minus_one(const Complex& z, BranchMode branch, const SCurve* curve,
                                  const PrecisionContext& ctx) {
  Real tol = ctx.tol();
  if (branch == BranchMode::SCURVE && curve == nullptr) throw BranchCurveRequired();
  if (detail::near_endpoint(z, tol)) return detail::principal_root(z);
  if (branch == BranchMode::PRINCIPAL || curve->is_segment()) {
    if (detail::on_segment(z, tol)) throw OnCut("point lies on the cut [-1, 1]");
    return detail::principal_root(z);
  }
  if (distance_to_curve(*curve, z) <= tol) throw OnCut("point lies on the S-curve cut");
  if (detail::on_segment(z, tol)) return detail::lower_form(z);
  Complex p = detail::principal_root(z);
  return in_lens_region(z, *curve, tol) ? -p : p;
}

inline Complex sqrt_zsq_minus_one(const Complex& z, BranchMode branch, const PrecisionContext& ctx) {
  return sqrt_zsq_minus_one(z, branch, nullptr, ctx);
}

/// Offset used by the side-limit helpers: 10 tol.
inline Real side_epsilon(const PrecisionContext& ctx) { return ctx.tol() * 10; }

/// Point displaced by side_epsilon off the active cut near z.
///
/// For PRINCIPAL (or the degenerate segment curve) the displacement is +-i.
/// For SCURVE it is along the left normal i*t of the nearest curve segment.
inline Complex side_point(const Complex& z, Side side, BranchMode branch, const SCurve* curve,
                          const PrecisionContext& ctx) {
  Real eps = side_epsilon(ctx);
  if (side == Side::MINUS) eps = -eps;
  if (branch == BranchMode::SCURVE) {
    if (curve == nullptr) throw BranchCurveRequired();
    if (!curve->is_segment()) {
      CurveProjection pr = project(*curve, z);
      Complex d = curve->points()[pr.segment + 1] - curve->points()[pr.segment];
      Complex normal = times_i(d / abs(d));
      return z + normal * eps;
    }
  }
  return {z.re(), z.im() + eps};
}

/// Boundary value of (z^2 - 1)^{1/2} on the given side of the active cut.
inline Complex sqrt_zsq_minus_one_limit(const Complex& z, Side side, BranchMode branch,
                                        const SCurve* curve, const PrecisionContext& ctx) {
  return sqrt_zsq_minus_one(side_point(z, side, branch, curve, ctx), branch, curve, ctx);
}

/// Principal arccos with cuts on (-inf, -1] and [1, inf):
/// arccos z = -i log(z + i sqrt(1 - z^2)).
inline Complex complex_arccos(const Complex& z) {
  Complex r = times_i(sqrt(1L - z * z));
  Complex w = z + r;
  // z + i sqrt(1 - z^2) and z - i sqrt(1 - z^2) are reciprocal; use the larger.
  Complex v = z - r;
  if (norm(w) < norm(v)) w = Complex(Real(1, z.precision())) / v;
  Complex l = log(w);
  return {l.im(), -l.re()};
}

namespace detail {

/// Terms must stay below tol * (largest partial sum) this many times in a row.
inline constexpr int kSmallTermRun = 3;

/// Crossover radius between power series and Hankel expansion.
inline double bessel_crossover(const PrecisionContext& ctx) {
  return ctx.digits() * std::log(10.0) / 2.0 + 5.0;
}

/// Power series of J_nu (nu = 0, 1) with enough extra digits to absorb the
/// cancellation among terms of size up to e^{|z|}.
inline Complex bessel_series(int nu, const Complex& z, const PrecisionContext& ctx) {
  double az = to_double(abs(z));
  unsigned extra = static_cast<unsigned>(std::ceil(az / std::log(10.0))) + 10;
  PrecisionContext wctx = ctx.with_digits(ctx.digits() + extra);
  Complex zw = round_to(z, wctx);
  Complex q = -(zw * zw) / 4L;
  Real tol = wctx.tol();
  Complex term = Complex::one(wctx);
  if (nu == 1) term = zw / 2L;
  Complex sum = term;
  Real max_sum = abs(sum);
  int small = 0;
  for (long k = 1; small < kSmallTermRun; ++k) {
    if (k > 100000) throw PrecisionExhausted("Bessel series did not terminate");
    term = term * q / (k * (k + nu));
    sum += term;
    Real as = abs(sum);
    if (as > max_sum) max_sum = as;
    if (abs(term) <= tol * max_sum) {
      ++small;
    } else {
      small = 0;
    }
  }
  return round_to(sum, ctx);
}

/// Hankel asymptotic expansion of J_nu (nu = 0, 1), valid for |arg z| < pi.
/// Arguments with Re z < 0 are reflected using the parity of J_nu.
inline Complex bessel_hankel(int nu, const Complex& z, const PrecisionContext& ctx) {
  if (z.re() < 0) {
    Complex r = bessel_hankel(nu, -z, ctx);
    return nu == 0 ? r : -r;
  }
  PrecisionContext wctx = ctx.with_digits(ctx.digits() + 10);
  Complex zw = round_to(z, wctx);
  Real mu = wctx.real(4L * nu * nu);
  Complex inv8z = Complex::one(wctx) / (zw * 8L);
  // a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! (8z)^k)
  Complex p = Complex::one(wctx);
  Complex q = Complex::zero(wctx);
  Complex term = Complex::one(wctx);
  Real prev = abs(term);
  Real scale = wctx.one();
  Real tol = ctx.tol();
  bool converged = false;
  for (long k = 1; k < 100000; ++k) {
    long odd = 2 * k - 1;
    Complex next = term * inv8z * (mu - odd * odd) / k;
    Real an = abs(next);
    if (an == 0) {
      converged = true;
      break;
    }
    if (an >= prev) break;  // terms started growing: truncate here
    term = std::move(next);
    prev = an;
    // (-1)^{floor(k/2)} sign pattern: P takes even k, Q odd k.
    long m = k / 2;
    Complex signed_term = (m % 2 == 0) ? term : -term;
    if (k % 2 == 0) {
      p += signed_term;
    } else {
      q += signed_term;
    }
    if (an <= tol * wctx.pow10(-5) * scale) {
      converged = true;
      break;
    }
  }
  if (!converged && prev > tol * (abs(p) + abs(q))) {
    throw PrecisionExhausted("Hankel expansion cannot reach the requested tolerance at |z| = " +
                             std::to_string(to_double(abs(z))));
  }
  Real pi = wctx.pi();
  Complex chi = zw - Complex(pi * (2 * nu + 1) / 4);
  Complex pref = sqrt(Complex(2L * Real(1, wctx.digits())) / (zw * pi));
  Complex r = pref * (p * cos(chi) - q * sin(chi));
  return round_to(r, ctx);
}

inline Complex bessel(int nu, const Complex& z, const PrecisionContext& ctx) {
  if (to_double(abs(z)) < bessel_crossover(ctx)) return bessel_series(nu, z, ctx);
  return bessel_hankel(nu, z, ctx);
}

}  // namespace detail

/// Bessel function J_0 at complex argument.
inline Complex bessel_j0(const Complex& z, const PrecisionContext& ctx) {
  return detail::bessel(0, z, ctx);
}

/// Bessel function J_1 at complex argument.
inline Complex bessel_j1(const Complex& z, const PrecisionContext& ctx) {
  return detail::bessel(1, z, ctx);
}

/// J_0'(z) = -J_1(z).
inline Complex bessel_j0_prime(const Complex& z, const PrecisionContext& ctx) {
  return -bessel_j1(z, ctx);
}

/// Nodes (ascending) and weights of the m-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

/// Legendre P_m and P_m' at x by the three-term recurrence.
inline std::pair<Real, Real> legendre_p(int m, const Real& x) {
  Real p0(1, x.precision());
  Real p1 = x;
  if (m == 0) return {p0, Real(0, x.precision())};
  for (int k = 2; k <= m; ++k) {
    Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  Real dp = m * (x * p1 - p0) / (x * x - 1);
  return {p1, dp};
}

inline GaussLegendre gauss_legendre(int m, const PrecisionContext& ctx) {
  if (m < 1) throw DomainError("Gauss-Legendre order must be positive");
  GaussLegendre r;
  r.nodes.resize(m, ctx.zero());
  r.weights.resize(m, ctx.zero());
  Real pi = ctx.pi();
  Real tol = ctx.tol() * ctx.pow10(-static_cast<int>(ctx.guard()) + 2);
  for (int j = 0; j < (m + 1) / 2; ++j) {
    Real x = boost::multiprecision::cos(pi * (4 * j + 3) / (4 * m + 2));
    Real dp(0, ctx.digits());
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre_p(m, x);
      Real dx = p / d;
      x -= dx;
      dp = std::move(d);
      if (boost::multiprecision::abs(dx) <= tol) {
        dp = legendre_p(m, x).second;
        break;
      }
    }
    Real w = 2 / ((1 - x * x) * dp * dp);
    r.nodes[j] = -x;
    r.weights[j] = w;
    r.nodes[m - 1 - j] = x;
    r.weights[m - 1 - j] = w;
  }
  if (m % 2 == 1) r.nodes[m / 2] = ctx.zero();
  return r;
}

}  // namespace oscgauss

#endif  // OSCGAUSS_SPECIAL_HPP
