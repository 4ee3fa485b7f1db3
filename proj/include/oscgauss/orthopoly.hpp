#ifndef OSCGAUSS_ORTHOPOLY_HPP
#define OSCGAUSS_ORTHOPOLY_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "complex.hpp"
#include "scurve.hpp"
#include "special.hpp"

namespace oscgauss {

/// Degree, frequency and coupling of one problem instance; lambda = omega / n.
struct ProblemParams {
  int n;
  Real omega;
  Real lambda;
  PrecisionContext ctx;

  static ProblemParams from_omega(int n, const Real& omega, const PrecisionContext& ctx) {
    check(n, omega);
    return {n, ctx.real(omega), ctx.real(omega) / n, ctx};
  }
  static ProblemParams from_lambda(int n, const Real& lambda, const PrecisionContext& ctx) {
    check(n, lambda);
    return {n, ctx.real(lambda) * n, ctx.real(lambda), ctx};
  }

 private:
  static void check(int n, const Real& v) {
    if (n < 1) throw DomainError("degree n must be at least 1");
    if (v < 0) throw DomainError("omega and lambda must be nonnegative");
  }
};

/// m[k] = int_{-1}^{1} x^k e^{i omega x} dx for k = 0..kmax.
struct MomentTable {
  Real omega;
  std::vector<Complex> m;

  int kmax() const { return static_cast<int>(m.size()) - 1; }
};

/// Monic three-term recurrence p_{k+1} = (z - b_k) p_k - a_sq_k p_{k-1} for
/// degrees 0..n, with norms h_k = <p_k, p_k> of the bilinear form (no
/// conjugation).
///
/// Index conventions: b[k] for k = 0..n-1; a_sq[k] for k = 0..n where a_sq[0]
/// is an unused zero and a_sq[n] = h[n]/h[n-1] is the coefficient that would
/// build p_{n+1}; h[k] for k = 0..n. exists[k] tells whether p_k exists.
/// Entries beyond the first missing degree are left at zero.
struct RecurrenceTable {
  Real omega;
  int n = 0;
  std::vector<Complex> a_sq;
  std::vector<Complex> b;
  std::vector<Complex> h;
  std::vector<bool> exists;
  /// Smallest pivot |h_k| relative to its elimination row scale.
  Real pivot_floor;
  /// First degree that does not exist, if any.
  std::optional<int> failed_degree;

  unsigned digits() const { return omega.precision(); }
  /// Highest degree k <= n with all p_0..p_k existing.
  int max_degree() const {
    int k = 0;
    while (k + 1 <= n && exists[k + 1]) ++k;
    return k;
  }
  void require(int k) const {
    if (k < 0 || k > n) throw DomainError("degree outside recurrence table");
    if (!exists[k]) throw ExistenceFailure(failed_degree.value_or(k), to_double(pivot_floor));
  }
};

/// Monic polynomial; coeffs in ascending powers, coeffs.back() == 1 exactly.
struct MonicPolynomial {
  std::vector<Complex> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct QuadratureRule {
  int n = 0;
  Real omega;
  std::vector<Complex> nodes;
  std::vector<Complex> weights;
};

using Integrand = std::function<Complex(const Complex&)>;

/// Moments by termwise integration of the exponential series.
///
/// m_k = sum_j (i omega)^j / j! * (1 - (-1)^{k+j+1}) / (k+j+1). Only k + j even
/// contributes, so even moments are real and odd moments purely imaginary by
/// construction.
inline MomentTable moments(const Real& omega, int kmax, const PrecisionContext& ctx) {
  if (kmax < 0) throw DomainError("kmax must be nonnegative");
  if (omega < 0) throw DomainError("omega must be nonnegative");
  double w = to_double(omega);
  unsigned extra = static_cast<unsigned>(std::ceil(0.4343 * w)) + 10;
  PrecisionContext wctx = ctx.with_digits(ctx.digits() + extra);
  Real om = wctx.real(omega);
  Real tol = wctx.tol();

  MomentTable table{ctx.real(omega), {}};
  table.m.reserve(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    // t_j = omega^j / j!, sign (-1)^{floor(j/2)} from i^j.
    Real t = wctx.one();
    Real sum = wctx.zero();
    Real max_sum = wctx.zero();
    int small = 0;
    for (long j = 0; small < detail::kSmallTermRun; ++j) {
      if (j > 0) t = t * om / j;
      if (j > 1000000) throw PrecisionExhausted("moment series did not terminate");
      Real term = wctx.zero();
      if ((k + j) % 2 == 0) {
        term = 2 * t / (k + j + 1);
        if ((j / 2) % 2 == 1) term = -term;
      }
      sum += term;
      Real as = boost::multiprecision::abs(sum);
      if (as > max_sum) max_sum = as;
      if (boost::multiprecision::abs(term) <= tol * max_sum) {
        ++small;
      } else {
        small = 0;
      }
    }
    if (k % 2 == 0) {
      table.m.emplace_back(ctx.real(sum), ctx.zero());
    } else {
      table.m.emplace_back(ctx.zero(), ctx.real(sum));
    }
  }
  return table;
}

/// Recurrence coefficients by Hankel elimination of the moment matrix, without
/// throwing: a vanishing pivot marks the remaining degrees as nonexistent.
///
/// A pivot h_k with |h_k| < 10^{-digits/2} * max_l |sigma_{k,l}| means p_{k+1}
/// does not exist.
inline RecurrenceTable try_recurrence_from_moments(const MomentTable& mom, int n,
                                                   const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("degree must be nonnegative");
  if (mom.kmax() < 2 * n) throw DomainError("moment table must cover k <= 2n");
  RecurrenceTable rec;
  rec.omega = ctx.real(mom.omega);
  rec.n = n;
  rec.a_sq.assign(n + 1, Complex::zero(ctx));
  rec.b.assign(n, Complex::zero(ctx));
  rec.h.assign(n + 1, Complex::zero(ctx));
  rec.exists.assign(n + 1, false);
  rec.exists[0] = true;
  rec.pivot_floor = ctx.real(1);
  Real threshold = ctx.pow10(-static_cast<int>(ctx.digits()) / 2);

  const int L = 2 * n + 1;
  std::vector<Complex> prev2(L, Complex::zero(ctx));
  std::vector<Complex> prev(L, Complex::zero(ctx));
  for (int l = 0; l < L; ++l) prev[l] = round_to(mom.m[l], ctx);

  auto pivot_ok = [&](const std::vector<Complex>& row, int k) {
    Real scale = ctx.zero();
    for (int l = k; l < L - k; ++l) scale = std::max(scale, abs(row[l]));
    Real rel = scale > 0 ? Real(abs(row[k]) / scale) : ctx.zero();
    if (rel < rec.pivot_floor) rec.pivot_floor = rel;
    return rel >= threshold;
  };

  rec.h[0] = prev[0];
  if (n == 0) {
    pivot_ok(prev, 0);
    return rec;
  }
  if (!pivot_ok(prev, 0)) {
    rec.failed_degree = 1;
    return rec;
  }
  rec.exists[1] = true;
  rec.b[0] = prev[1] / prev[0];

  for (int k = 1; k <= n; ++k) {
    std::vector<Complex> cur(L, Complex::zero(ctx));
    for (int l = k; l < L - k; ++l) {
      cur[l] = prev[l + 1] - rec.b[k - 1] * prev[l];
      if (k >= 2) cur[l] -= rec.a_sq[k - 1] * prev2[l];
    }
    rec.h[k] = cur[k];
    rec.a_sq[k] = cur[k] / prev[k - 1];
    bool ok = pivot_ok(cur, k);
    if (k == n) break;
    if (!ok) {
      rec.failed_degree = k + 1;
      return rec;
    }
    rec.exists[k + 1] = true;
    rec.b[k] = cur[k + 1] / cur[k] - prev[k] / prev[k - 1];
    prev2 = std::move(prev);
    prev = std::move(cur);
  }
  return rec;
}

/// As try_recurrence_from_moments, but raises ExistenceFailure when some
/// degree <= n does not exist.
inline RecurrenceTable recurrence_from_moments(const MomentTable& mom, int n,
                                               const PrecisionContext& ctx) {
  RecurrenceTable rec = try_recurrence_from_moments(mom, n, ctx);
  if (rec.failed_degree) throw ExistenceFailure(*rec.failed_degree, to_double(rec.pivot_floor));
  return rec;
}

/// p_k(z) by the forward recurrence.
inline Complex eval_poly(const RecurrenceTable& rec, int k, const Complex& z) {
  rec.require(k);
  Complex pm1(Real(0, z.precision()), Real(0, z.precision()));
  Complex p(Real(1, z.precision()), Real(0, z.precision()));
  for (int j = 0; j < k; ++j) {
    Complex next = (z - rec.b[j]) * p - rec.a_sq[j] * pm1;
    pm1 = std::move(p);
    p = std::move(next);
  }
  return p;
}

/// p_k(z), p_k'(z) and p_{k-1}(z) by the differentiated recurrence.
struct PolyValue {
  Complex p;
  Complex dp;
  Complex p_prev;
};

inline PolyValue eval_poly_with_derivative(const RecurrenceTable& rec, int k, const Complex& z) {
  rec.require(k);
  Real zero(0, z.precision());
  Complex pm1(zero, zero), dpm1(zero, zero);
  Complex p(Real(1, z.precision()), zero), dp(zero, zero);
  for (int j = 0; j < k; ++j) {
    Complex zb = z - rec.b[j];
    Complex next = zb * p - rec.a_sq[j] * pm1;
    Complex dnext = p + zb * dp - rec.a_sq[j] * dpm1;
    pm1 = std::move(p);
    dpm1 = std::move(dp);
    p = std::move(next);
    dp = std::move(dnext);
  }
  return {p, dp, pm1};
}

/// Coefficients of p_n in the monomial basis.
inline MonicPolynomial monic_coefficients(const RecurrenceTable& rec, int n) {
  rec.require(n);
  unsigned d = rec.digits();
  Complex zero(Real(0, d), Real(0, d));
  Complex one(Real(1, d), Real(0, d));
  std::vector<Complex> pm1;  // p_{-1} = 0
  std::vector<Complex> p{one};
  for (int j = 0; j < n; ++j) {
    std::vector<Complex> next(j + 2, zero);
    for (int i = 0; i <= j; ++i) {
      next[i + 1] += p[i];
      next[i] -= rec.b[j] * p[i];
    }
    for (std::size_t i = 0; i < pm1.size(); ++i) next[i] -= rec.a_sq[j] * pm1[i];
    next[j + 1] = one;
    pm1 = std::move(p);
    p = std::move(next);
  }
  return {std::move(p)};
}

namespace detail {

/// Horner evaluation of a polynomial and its derivative.
inline std::pair<Complex, Complex> horner(const std::vector<Complex>& c, const Complex& z) {
  Complex p = c.back();
  Complex dp(Real(0, z.precision()), Real(0, z.precision()));
  for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

/// sum_k |c_k| |z|^k: the magnitude scale against which |p(z)| is judged.
inline Real horner_scale(const std::vector<Complex>& c, const Complex& z) {
  Real az = abs(z);
  Real s = abs(c.back());
  for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) s = s * az + abs(c[i]);
  return s;
}

/// Point of the curve carrying cumulative mass `target` (linear interpolation).
inline Complex point_at_mass(const SCurve& curve, const Real& target) {
  const auto& mass = curve.mass();
  auto it = std::lower_bound(mass.begin(), mass.end(), target);
  if (it == mass.begin()) return curve.points().front();
  if (it == mass.end()) return curve.points().back();
  std::size_t i = static_cast<std::size_t>(it - mass.begin());
  Real dm = mass[i] - mass[i - 1];
  Real t = dm > 0 ? Real((target - mass[i - 1]) / dm) : Real(0, target.precision());
  return curve.points()[i - 1] + (curve.points()[i] - curve.points()[i - 1]) * t;
}

inline bool zero_order(const Complex& a, const Complex& b) {
  if (a.re() != b.re()) return a.re() < b.re();
  return a.im() < b.im();
}

}  // namespace detail

/// All n zeros of p_n, sorted by real part then imaginary part.
///
/// Aberth-Ehrlich iteration followed by Newton polishing, both evaluating p_n
/// through the recurrence. Initial guesses are the equal-mass points
/// of `init` when given, Chebyshev points of [-1, 1] otherwise.
inline std::vector<Complex> zeros(const RecurrenceTable& rec, int n, const PrecisionContext& ctx,
                                  const SCurve* init = nullptr) {
  if (n < 1) throw DomainError("zeros requires n >= 1");
  rec.require(n);
  PrecisionContext wctx = ctx.with_digits(std::max(ctx.digits(), rec.digits()));
  if (n == 1) return {round_to(rec.b[0], wctx)};

  MonicPolynomial poly = monic_coefficients(rec, n);
  std::vector<Complex> z;
  z.reserve(n);
  Real pi = wctx.pi();
  for (int j = 0; j < n; ++j) {
    if (init != nullptr && !init->is_segment()) {
      z.push_back(round_to(detail::point_at_mass(*init, wctx.real(2 * j + 1) / (2 * n)), wctx));
    } else {
      Real theta = pi * (2 * (n - 1 - j) + 1) / (2 * n);
      // A small complex offset breaks the real symmetry of the starting set.
      z.emplace_back(boost::multiprecision::cos(theta),
                     wctx.real(1e-2) * boost::multiprecision::sin(theta * 3 + 1));
    }
  }

  // Aberth sweeps run until every correction is below sqrt(tol); Newton
  // polishing then doubles the number of correct digits per step.
  Real tol = wctx.tol();
  Real accept = boost::multiprecision::sqrt(tol);
  std::vector<bool> done(n, false);
  int remaining = n;
  for (int it = 0; it < 500 && remaining > 0; ++it) {
    for (int j = 0; j < n; ++j) {
      if (done[j]) continue;
      PolyValue v = eval_poly_with_derivative(rec, n, z[j]);
      if (v.p.re() == 0 && v.p.im() == 0) {
        done[j] = true;
        --remaining;
        continue;
      }
      Complex ratio = v.p / v.dp;
      Complex s = Complex::zero(wctx);
      for (int k = 0; k < n; ++k) {
        if (k != j) s += Complex::one(wctx) / (z[j] - z[k]);
      }
      Complex w = ratio / (1L - ratio * s);
      z[j] -= w;
      if (abs(w) <= accept * (1 + abs(z[j]))) {
        done[j] = true;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    throw NonConvergence("Aberth-Ehrlich iteration did not converge within 500 sweeps (n = " +
                         std::to_string(n) + ")");
  }

  for (int j = 0; j < n; ++j) {
    for (int it = 0; it < 8; ++it) {
      PolyValue v = eval_poly_with_derivative(rec, n, z[j]);
      if (v.dp.re() == 0 && v.dp.im() == 0) break;
      Complex step = v.p / v.dp;
      z[j] -= step;
      if (abs(step) <= tol * (1 + abs(z[j]))) break;
    }
    Complex pv = detail::horner(poly.coeffs, z[j]).first;
    if (abs(pv) > accept * detail::horner_scale(poly.coeffs, z[j])) {
      throw NonConvergence("zero " + std::to_string(j) + " of p_" + std::to_string(n) +
                           " failed the residual check");
    }
  }
  std::sort(z.begin(), z.end(), detail::zero_order);
  return z;
}

/// n-point Gaussian rule for the weight e^{i omega x} with Christoffel weights
/// w_j = h_{n-1} / (p_{n-1}(x_j) p_n'(x_j)).
inline QuadratureRule quadrature_rule(const RecurrenceTable& rec, int n, const PrecisionContext& ctx,
                                      const SCurve* init = nullptr) {
  std::vector<Complex> nodes = zeros(rec, n, ctx, init);
  QuadratureRule rule{n, ctx.real(rec.omega), {}, {}};
  Real tol = ctx.tol();
  for (const auto& x : nodes) {
    PolyValue v = eval_poly_with_derivative(rec, n, x);
    if (abs(v.dp) < tol) throw DegenerateNode("p_n' vanishes at a quadrature node");
    rule.weights.push_back(round_to(rec.h[n - 1] / (v.p_prev * v.dp), ctx));
    rule.nodes.push_back(round_to(x, ctx));
  }
  return rule;
}

/// sum_j w_j f(x_j).
inline Complex integrate(const QuadratureRule& rule, const Integrand& f) {
  if (rule.nodes.empty()) throw DomainError("empty quadrature rule");
  unsigned d = rule.nodes.front().precision();
  Complex sum(Real(0, d), Real(0, d));
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) sum += rule.weights[j] * f(rule.nodes[j]);
  return sum;
}

/// Reference value of int_{-1}^{1} f(x) e^{i omega x} dx by panelwise
/// Gauss-Legendre, halving panels until two successive sums agree to tol.
inline Complex oracle_integrate(const Integrand& f, const Real& omega, const PrecisionContext& ctx) {
  PrecisionContext wctx = ctx.with_digits(ctx.digits() + 10);
  int order = std::max(10, static_cast<int>(ctx.digits()) / 2);
  GaussLegendre gl = gauss_legendre(order, wctx);
  Real om = wctx.real(omega);
  double width = M_PI / std::max(to_double(omega), 1.0);
  int panels = std::max(1, static_cast<int>(std::ceil(2.0 / width)));

  auto run = [&](int np, Real& l1) {
    Complex sum = Complex::zero(wctx);
    l1 = wctx.zero();
    Real half = wctx.one() / np;
    for (int p = 0; p < np; ++p) {
      Real mid = -1 + (2 * p + 1) * half;
      for (int j = 0; j < order; ++j) {
        Real x = mid + half * gl.nodes[j];
        Complex v = f(Complex(x, wctx.zero())) * polar(wctx.one(), om * x) * (gl.weights[j] * half);
        l1 += abs(v);
        sum += v;
      }
    }
    return sum;
  };

  Real l1 = wctx.zero();
  Complex prev = run(panels, l1);
  Real tol = ctx.tol();
  for (int round = 0; round < 10; ++round) {
    panels *= 2;
    Complex cur = run(panels, l1);
    if (dist(cur, prev) <= tol * l1) return round_to(cur, ctx);
    prev = std::move(cur);
  }
  throw PrecisionExhausted("oracle quadrature did not settle after 10 panel halvings");
}

namespace detail {

/// max_{k<n} |sum_j c_j m_{j+k}| / |h_{n-1}| for the monic coefficients c of p_n.
inline Real orthogonality_defect(const RecurrenceTable& rec, const MomentTable& mom, int n) {
  unsigned d = rec.digits();
  if (n <= 0) return Real(0, d);
  MonicPolynomial poly = monic_coefficients(rec, n);
  Real worst(0, d);
  for (int k = 0; k < n; ++k) {
    Complex s(Real(0, d), Real(0, d));
    for (int j = 0; j <= n; ++j) s += poly.coeffs[j] * mom.m[j + k];
    worst = std::max(worst, abs(s));
  }
  return worst / abs(rec.h[n - 1]);
}

}  // namespace detail

/// Working digits for degree n under the precision policy: max(user, 40 + 2n).
inline unsigned policy_digits(int n, const PrecisionContext& ctx) {
  return std::max<unsigned>(ctx.digits(), 40u + 2u * static_cast<unsigned>(std::max(n, 0)));
}

/// Recurrence table for degrees 0..n at frequency omega under the precision
/// policy. The orthogonality defect of p_n must fall below 10^{-digits/3};
/// otherwise the computation is repeated once at twice the digits.
inline RecurrenceTable recurrence(int n, const Real& omega, const PrecisionContext& ctx) {
  unsigned digits = policy_digits(n, ctx);
  for (int attempt = 0; attempt < 2; ++attempt) {
    PrecisionContext wctx = ctx.with_digits(digits);
    MomentTable mom = moments(omega, 2 * n + 1, wctx);
    RecurrenceTable rec = recurrence_from_moments(mom, n, wctx);
    if (n == 0) return rec;
    Real defect = detail::orthogonality_defect(rec, mom, n);
    if (defect < wctx.pow10(-static_cast<int>(digits) / 3)) return rec;
    digits *= 2;
  }
  throw PrecisionExhausted("orthogonality defect of p_" + std::to_string(n) +
                           " stays above 10^(-digits/3) after doubling the digits");
}

}  // namespace oscgauss

#endif  // OSCGAUSS_ORTHOPOLY_HPP
