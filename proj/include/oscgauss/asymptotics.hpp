#ifndef OSCGAUSS_ASYMPTOTICS_HPP
#define OSCGAUSS_ASYMPTOTICS_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "complex.hpp"
#include "potential.hpp"
#include "scurve.hpp"
#include "special.hpp"

namespace oscgauss {

/// 2x2 complex matrix, row-major.
class Matrix2 {
 public:
  Matrix2(Complex a11, Complex a12, Complex a21, Complex a22)
      : e_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {}

  static Matrix2 identity(const PrecisionContext& ctx) {
    return {Complex::one(ctx), Complex::zero(ctx), Complex::zero(ctx), Complex::one(ctx)};
  }
  static Matrix2 zero(const PrecisionContext& ctx) {
    return {Complex::zero(ctx), Complex::zero(ctx), Complex::zero(ctx), Complex::zero(ctx)};
  }

  /// Entry (i, j) with 1-based indices as in matrix notation.
  const Complex& operator()(int i, int j) const { return e_[(i - 1) * 2 + (j - 1)]; }
  Complex& operator()(int i, int j) { return e_[(i - 1) * 2 + (j - 1)]; }

  Complex det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  Complex trace() const { return e_[0] + e_[3]; }

  Matrix2 inverse() const {
    Complex d = det();
    if (d.re() == 0 && d.im() == 0) throw DomainError("singular 2x2 matrix");
    return {e_[3] / d, -e_[1] / d, -e_[2] / d, e_[0] / d};
  }

  Matrix2& operator+=(const Matrix2& o) {
    for (int i = 0; i < 4; ++i) e_[i] += o.e_[i];
    return *this;
  }
  Matrix2& operator-=(const Matrix2& o) {
    for (int i = 0; i < 4; ++i) e_[i] -= o.e_[i];
    return *this;
  }
  Matrix2& operator*=(const Complex& s) {
    for (auto& x : e_) x *= s;
    return *this;
  }
  friend Matrix2 operator+(Matrix2 a, const Matrix2& b) { return a += b; }
  friend Matrix2 operator-(Matrix2 a, const Matrix2& b) { return a -= b; }
  friend Matrix2 operator*(Matrix2 a, const Complex& s) { return a *= s; }
  friend Matrix2 operator*(const Complex& s, Matrix2 a) { return a *= s; }
  friend Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.e_[0] * b.e_[0] + a.e_[1] * b.e_[2], a.e_[0] * b.e_[1] + a.e_[1] * b.e_[3],
            a.e_[2] * b.e_[0] + a.e_[3] * b.e_[2], a.e_[2] * b.e_[1] + a.e_[3] * b.e_[3]};
  }

  /// Largest entrywise modulus.
  Real max_abs() const {
    Real m = abs(e_[0]);
    for (int i = 1; i < 4; ++i) m = std::max(m, abs(e_[i]));
    return m;
  }

 private:
  std::array<Complex, 4> e_;
};

/// Entrywise maximum distance.
inline Real max_dist(const Matrix2& a, const Matrix2& b) { return (a - b).max_abs(); }

enum class FormulaId { OUTER, INNER, ENDPOINT_P1, ENDPOINT_M1 };

inline const char* formula_name(FormulaId f) {
  switch (f) {
    case FormulaId::OUTER:
      return "OUTER";
    case FormulaId::INNER:
      return "INNER";
    case FormulaId::ENDPOINT_P1:
      return "ENDPOINT_P1";
    case FormulaId::ENDPOINT_M1:
      return "ENDPOINT_M1";
  }
  return "?";
}

struct AsymptoticPrediction {
  FormulaId formula;
  Complex value;
};

/// Region radii: endpoint discs |z -+ 1| < delta and the neighbourhood
/// dist(z, curve) <= width of the curve.
struct RegionRadii {
  double delta = 0.1;
  double width = 0.1;
};

/// Region guards under the given radii. Exactly one holds at every z: the
/// curve passes through +-1, so a point of an endpoint disc is never farther
/// than delta from the curve.
inline bool endpoint_guard(const Complex& z, int which, const RegionRadii& radii = {}) {
  return to_double(dist(z, Complex(Real(which, z.precision())))) < radii.delta;
}

inline bool outer_guard(const Complex& z, const SCurve& curve, const RegionRadii& radii = {}) {
  return to_double(distance_to_curve(curve, z)) > radii.width;
}

inline bool inner_guard(const Complex& z, const SCurve& curve, const RegionRadii& radii = {}) {
  return !endpoint_guard(z, 1, radii) && !endpoint_guard(z, -1, radii) &&
         !outer_guard(z, curve, radii);
}

/// The formula whose region contains z.
inline FormulaId governing_formula(const Complex& z, const SCurve& curve,
                                   const RegionRadii& radii = {}) {
  if (endpoint_guard(z, 1, radii)) return FormulaId::ENDPOINT_P1;
  if (endpoint_guard(z, -1, radii)) return FormulaId::ENDPOINT_M1;
  if (outer_guard(z, curve, radii)) return FormulaId::OUTER;
  return FormulaId::INNER;
}

namespace detail {

/// sqrt(varphi / s) with s = (z^2 - 1)^{1/2}. varphi / s = 1 + z / s never
/// takes negative real values off the cut, so the principal root is analytic
/// wherever s is.
inline Complex sqrt_varphi_over_s(const Complex& vp, const Complex& s) { return sqrt(vp / s); }

inline Real sqrt2(const PrecisionContext& ctx) { return boost::multiprecision::sqrt(ctx.real(2)); }

inline Real pow2(long e, const PrecisionContext& ctx) {
  return boost::multiprecision::ldexp(ctx.one(), static_cast<int>(e));
}

}  // namespace detail

/// Outer strong asymptotics of the monic p_n, valid away from the curve:
/// varphi^{n+1/2} / (2^{n+1/2} (z^2-1)^{1/4}) exp(-i n lambda / (2 varphi)).
inline Complex outer_pn(const Complex& z, int n, const Real& lambda, const SCurve& curve,
                        const PrecisionContext& ctx, const RegionRadii& radii = {}) {
  if (!outer_guard(z, curve, radii)) {
    throw RegionViolation("outer formula requires distance to the S-curve > " +
                          std::to_string(radii.width));
  }
  Complex s = sqrt_zsq_minus_one(z, BranchMode::SCURVE, &curve, ctx);
  Complex vp = z + s;
  Complex pre = pow(vp, static_cast<long>(n)) * detail::sqrt_varphi_over_s(vp, s) /
                (detail::pow2(n, ctx) * detail::sqrt2(ctx));
  Complex arg = detail::i_lambda(ctx.real(lambda)) * (-n) / (vp * 2L);
  return pre * exp(arg);
}

/// Inner (oscillatory) asymptotics near the curve, outside the endpoint discs:
/// 2^{1/2-n} e^{-i n lambda z / 2} (1 - z^2)^{-1/4}
///   cos((n + 1/2) arccos z + (n lambda / 2) (z^2 - 1)^{1/2} - pi/4).
///
/// The root (z^2 - 1)^{1/2} = i (1 - z^2)^{1/2} is the continuation of the
/// boundary value from the left of the curve, which makes the expression
/// analytic across the curve.
inline Complex inner_pn(const Complex& z, int n, const Real& lambda, const SCurve& curve,
                        const PrecisionContext& ctx, const RegionRadii& radii = {}) {
  if (endpoint_guard(z, 1, radii) || endpoint_guard(z, -1, radii)) {
    throw RegionViolation("inner formula is not valid inside the endpoint discs");
  }
  if (outer_guard(z, curve, radii)) {
    throw RegionViolation("inner formula requires distance to the S-curve <= " +
                          std::to_string(radii.width));
  }
  Real lam = ctx.real(lambda);
  Complex w = 1L - z * z;
  Complex s = times_i(sqrt(w));
  Real pi = ctx.pi();
  Complex phase = complex_arccos(z) * (ctx.real(2 * n + 1) / 2) + s * (lam * n / 2) -
                  Complex(pi / 4);
  Complex pre = exp(detail::i_lambda(lam) * z * (-n) / 2L) * detail::sqrt2(ctx) /
                (detail::pow2(n, ctx) * sqrt(sqrt(w)));
  return pre * cos(phase);
}

/// Local conformal map at z = 1: f = phi^2 / 16, f / (z - 1) -> (2 + i lambda)^2 / 8.
inline Complex endpoint_conformal_f(const Complex& z, const Real& lambda, const SCurve& curve,
                                    const PrecisionContext& ctx) {
  Complex p = phi(z, ctx.real(lambda), BranchMode::SCURVE, &curve, ctx);
  return p * p / 16L;
}

namespace detail {

/// Endpoint formula at z = 1.
inline Complex endpoint_pn_right(const Complex& z, int n, const Real& lam, const SCurve& curve,
                                 const PrecisionContext& ctx) {
  Complex s = sqrt_zsq_minus_one(z, BranchMode::SCURVE, &curve, ctx);
  Complex ph = log(z + s) * 2L + i_lambda(lam) * s;
  Complex zm1 = z - 1L;
  Complex zp1 = z + 1L;
  // f / beta^4 = F (z + 1) with F = f / (z - 1) analytic at 1 and
  // F(1) = (2 + i lambda)^2 / 8; its fourth root is continued from
  // ((2 + i lambda)^2 / 4)^{1/4} = ((2 + i lambda) / 2)^{1/2}.
  Complex F = (zm1.re() == 0 && zm1.im() == 0)
                  ? (2L + i_lambda(lam)) * (2L + i_lambda(lam)) / 8L
                  : ph * ph / (zm1 * 16L);
  Complex X = F * zp1;
  Complex root = sqrt(sqrt(X));
  Complex ref = sqrt((2L + i_lambda(lam)) / 2L);
  Complex best = root;
  for (int k = 1; k < 4; ++k) {
    root = times_i(root);
    if (dist(root, ref) < dist(best, ref)) best = root;
  }
  Complex f4_over_beta = best;
  // beta^2 = s / (z + 1) with s on the same sheet as phi.
  Complex f4_beta = f4_over_beta * s / zp1;
  Complex arg = times_i(ph) * (-n) / 2L;
  Complex j0 = bessel_j0(arg, ctx);
  Complex j0p = -bessel_j1(arg, ctx);
  Real pi = ctx.pi();
  Real pref = boost::multiprecision::sqrt(pi * n) / pow2(n, ctx);
  Complex e = exp(i_lambda(lam) * z * (-n) / 2L);
  // f^{1/4} [beta^{-1} J0 - i beta J0'] = (f^{1/4}/beta) J0 - i (f^{1/4} beta) J0'.
  Complex bracket = f4_over_beta * j0 - times_i(f4_beta * j0p);
  return e * bracket * pref;
}

}  // namespace detail

/// Bessel-type asymptotics in the endpoint disc |z - which| < delta.
///
/// The prefactor is (pi n)^{1/2} 2^{-n}, which reproduces the Mehler-Heine
/// limit of the Legendre case. The disc at -1 is handled by the symmetry
/// p_n(-conj z) = (-1)^n conj(p_n(z)).
inline Complex endpoint_pn(const Complex& z, int n, const Real& lambda, const SCurve& curve,
                           int which, const PrecisionContext& ctx, const RegionRadii& radii = {}) {
  if (which != 1 && which != -1) throw DomainError("endpoint must be +1 or -1");
  if (!endpoint_guard(z, which, radii)) {
    throw RegionViolation("endpoint formula requires |z - (" + std::to_string(which) +
                          ")| < " + std::to_string(radii.delta));
  }
  Real lam = ctx.real(lambda);
  if (which == 1) return detail::endpoint_pn_right(z, n, lam, curve, ctx);
  Complex r = conj(detail::endpoint_pn_right(-conj(z), n, lam, curve, ctx));
  return n % 2 == 0 ? r : -r;
}

/// Prediction by formula f; throws RegionViolation outside its region.
inline AsymptoticPrediction predict(FormulaId f, const Complex& z, int n, const Real& lambda,
                                    const SCurve& curve, const PrecisionContext& ctx,
                                    const RegionRadii& radii = {}) {
  switch (f) {
    case FormulaId::OUTER:
      return {f, outer_pn(z, n, lambda, curve, ctx, radii)};
    case FormulaId::INNER:
      return {f, inner_pn(z, n, lambda, curve, ctx, radii)};
    case FormulaId::ENDPOINT_P1:
      return {f, endpoint_pn(z, n, lambda, curve, 1, ctx, radii)};
    case FormulaId::ENDPOINT_M1:
      return {f, endpoint_pn(z, n, lambda, curve, -1, ctx, radii)};
  }
  throw DomainError("unknown formula");
}

/// Leading large-n behaviour of the recurrence coefficients:
/// a^2 = 1/4 + (4 - lambda^2) / (4 (4 + lambda^2)^2 n^2),
/// b = -2 i lambda / ((4 + lambda^2)^2 n^2).
inline std::pair<Complex, Complex> recurrence_asymptotics(int n, const Real& lambda,
                                                          const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("n must be at least 1");
  Real l = ctx.real(lambda);
  Real q = (4 + l * l) * (4 + l * l);
  Real n2 = ctx.real(n) * n;
  Complex a(ctx.real(1) / 4 + (4 - l * l) / (4 * q * n2), ctx.zero());
  Complex b(ctx.zero(), -2 * l / (q * n2));
  return {a, b};
}

/// Outer parametrix N(z) with the cut on the curve; det N = 1, N(inf) = I.
inline Matrix2 N_matrix(const Complex& z, const Real& lambda, const SCurve& curve,
                        const PrecisionContext& ctx) {
  (void)lambda;
  Complex s = sqrt_zsq_minus_one(z, BranchMode::SCURVE, &curve, ctx);
  Complex vp = z + s;
  Complex d = detail::sqrt_varphi_over_s(vp, s) / detail::sqrt2(ctx);
  Complex off = times_i(d / vp);
  return {d, off, -off, d};
}

namespace detail {

/// Constant matrix of Delta_k at the endpoint `which`.
inline Matrix2 delta_core(int k, int which, const PrecisionContext& ctx) {
  Real diag = (ctx.real(k) / 2 - ctx.real(1) / 4) / k;
  Real off = ctx.real(k) - ctx.real(1) / 2;
  Real sgn = (k % 2 == 0) ? ctx.one() : -ctx.one();
  Complex m11(sgn * diag, ctx.zero());
  Complex m22(diag, ctx.zero());
  Complex m12(ctx.zero(), -off * which);
  Complex m21(ctx.zero(), sgn * off * which);
  return {m11, m12, m21, m22};
}

/// (-1)^{k-1} prod_{j<k} (2j-1)^2 / (4^{k-1} (k-1)!).
inline Real delta_scale(int k, const PrecisionContext& ctx) {
  Real c = ctx.one();
  for (int j = 1; j < k; ++j) c = c * ((2 * j - 1) * (2 * j - 1)) / (4 * j);
  return (k % 2 == 1) ? c : Real(-c);
}

}  // namespace detail

/// Delta_k(z) on a punctured endpoint disc 0 < |z - endpoint| <= delta:
/// c_k phi(z)^{-k} N(z) M_k N(z)^{-1}. At -1 the local phase is
/// 2 Log(-varphi) + i lambda (z^2 - 1)^{1/2}, i.e. phi - 2 pi i continued
/// from the upper half plane.
inline Matrix2 delta_k(const Complex& z, int k, const Real& lambda, const SCurve& curve,
                       int endpoint, const PrecisionContext& ctx, double delta = 0.1) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (endpoint != 1 && endpoint != -1) throw DomainError("endpoint must be +1 or -1");
  Complex e(ctx.real(endpoint));
  Real r = dist(z, e);
  if (r == 0 || to_double(r) > delta) {
    throw RegionViolation("Delta_k is defined on the punctured disc 0 < |z -+ 1| <= delta");
  }
  Real lam = ctx.real(lambda);
  Complex s = sqrt_zsq_minus_one(z, BranchMode::SCURVE, &curve, ctx);
  Complex vp = z + s;
  Complex ph = (endpoint == 1 ? log(vp) : log(-vp)) * 2L + detail::i_lambda(lam) * s;
  Matrix2 N = N_matrix(z, lam, curve, ctx);
  Matrix2 core = N * detail::delta_core(k, endpoint, ctx) * N.inverse();
  Complex c = Complex(detail::delta_scale(k, ctx)) / pow(ph, static_cast<long>(k));
  return core * c;
}

/// Pole coefficients of Delta_1 and of R^{(1)}_- Delta_1 + Delta_2 at +-1 and
/// the z^{-1}, z^{-2} coefficients of R^{(1)}, R^{(2)} at infinity.
struct RExpansion {
  Matrix2 A1, B1, A2, B2;
  Matrix2 R1_z1, R1_z2, R2_z1, R2_z2;
};

inline RExpansion R_expansion(const Real& lambda, const PrecisionContext& ctx) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  Real l = ctx.real(lambda);
  Complex i = Complex::i(ctx);
  Complex il(ctx.zero(), l);
  Complex one = Complex::one(ctx);
  Complex two(ctx.real(2), ctx.zero());

  Complex ca = -one / ((two + il) * 8L);
  Matrix2 A1 = Matrix2(-one, i, i, one) * ca;
  Complex cb = -one / ((two - il) * 8L);
  Matrix2 B1 = Matrix2(one, i, i, -one) * cb;

  Complex lm = Complex(l) - i * 2L;  // lambda - 2i
  Complex lp = Complex(l) + i * 2L;  // lambda + 2i
  Complex u = times_i(Complex(l)) * 2L - 5L;  // 2 i lambda - 5
  Complex v = times_i(Complex(l)) * 2L + 5L;  // 2 i lambda + 5
  Matrix2 A2 = Matrix2(lm, u * 4L, -u * 4L, lm) * (-one / (lm * lm * lp * 64L));
  Matrix2 B2 = Matrix2(lp, -v * 4L, v * 4L, lp) * (one / (lp * lp * lm * 64L));

  return {A1, B1, A2, B2, A1 + B1, A1 - B1, A2 + B2, A2 - B2};
}

/// Recurrence coefficients from the large-z coefficients of R:
/// [R_1] = R1_z1 / n + R2_z1 / n^2, [R_2] = R1_z2 / n + R2_z2 / n^2, then
/// a^2 = ([R_1]_12 + i/2)([R_1]_21 - i/2),
/// b = (i [R_1]_11 + 2 [R_2]_12) / (i + 2 [R_1]_12) - [R_1]_22.
inline std::pair<Complex, Complex> recurrence_from_R(const Real& lambda, int n,
                                                     const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("n must be at least 1");
  RExpansion R = R_expansion(lambda, ctx);
  Complex inv_n(ctx.one() / n, ctx.zero());
  Complex inv_n2 = inv_n * inv_n;
  Matrix2 Rb1 = R.R1_z1 * inv_n + R.R2_z1 * inv_n2;
  Matrix2 Rb2 = R.R1_z2 * inv_n + R.R2_z2 * inv_n2;
  Complex half_i(ctx.zero(), ctx.real(1) / 2);
  Complex i = Complex::i(ctx);
  Complex a2 = (Rb1(1, 2) + half_i) * (Rb1(2, 1) - half_i);
  Complex b = (i * Rb1(1, 1) + Rb2(1, 2) * 2L) / (i + Rb1(1, 2) * 2L) - Rb1(2, 2);
  return {a2, b};
}

/// Expansion coefficients of g(z) = log z - c1 / z - c2 / z^2 + O(z^-3):
/// c1 = i lambda / 4 and c2 = 1/4 (so that int s^2 dmu = 2 c2 = 1/2).
inline std::pair<Complex, Complex> mu_moments(const Real& lambda, const PrecisionContext& ctx) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  return {Complex(ctx.zero(), ctx.real(lambda) / 4), Complex(ctx.real(1) / 4, ctx.zero())};
}

/// Szego function D(z) = exp(i omega / (2 varphi(z))), cut on [-1, 1].
inline Complex szego_D(const Complex& z, const Real& omega, const PrecisionContext& ctx) {
  Complex vp = varphi(z, BranchMode::PRINCIPAL, nullptr, ctx);
  return exp(times_i(Complex(ctx.real(omega))) / (vp * 2L));
}

/// Boundary value of D on (-1, 1) from the given side.
inline Complex szego_D_limit(const Real& x, Side side, const Real& omega,
                             const PrecisionContext& ctx) {
  Complex z = side_point(Complex(ctx.real(x)), side, BranchMode::PRINCIPAL, nullptr, ctx);
  return szego_D(z, omega, ctx);
}

/// Weight W(z) = e^{i omega z}.
inline Complex weight_W(const Complex& z, const Real& omega, const PrecisionContext& ctx) {
  return exp(times_i(z * ctx.real(omega)));
}

/// Phase (n lambda / 2)(z^2 - 1)^{1/2} with the cut on the curve.
inline Complex remark_phase(const Complex& z, int n, const Real& lambda, const SCurve& curve,
                            const PrecisionContext& ctx) {
  Complex s = sqrt_zsq_minus_one(z, BranchMode::SCURVE, &curve, ctx);
  return s * (ctx.real(lambda) * n / 2);
}

}  // namespace oscgauss

#endif  // OSCGAUSS_ASYMPTOTICS_HPP
