#ifndef OSCGAUSS_POTENTIAL_HPP
#define OSCGAUSS_POTENTIAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "scurve.hpp"
#include "special.hpp"

namespace oscgauss {

/// Default S-curve resolution: maximal segment length and on-curve accuracy.
inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kDefaultCurveTol = 1e-20;

/// h(lambda) = 2 log((2 + sqrt(lambda^2 + 4)) / lambda) - sqrt(lambda^2 + 4).
inline Real h_of_lambda(const Real& lambda, const PrecisionContext& ctx) {
  if (lambda <= 0) throw DomainError("h(lambda) requires lambda > 0");
  Real l = ctx.real(lambda);
  Real s = boost::multiprecision::sqrt(l * l + 4);
  return 2 * boost::multiprecision::log((2 + s) / l) - s;
}

/// h'(lambda) = -sqrt(lambda^2 + 4) / lambda.
inline Real h_prime(const Real& lambda, const PrecisionContext& ctx) {
  if (lambda <= 0) throw DomainError("h'(lambda) requires lambda > 0");
  Real l = ctx.real(lambda);
  return -boost::multiprecision::sqrt(l * l + 4) / l;
}

/// Unique positive root of h: bisection on [1, 2], then Newton.
inline Real solve_lambda0(const PrecisionContext& ctx) {
  Real lo = ctx.real(1), hi = ctx.real(2);
  for (int i = 0; i < 30; ++i) {
    Real mid = (lo + hi) / 2;
    if (h_of_lambda(mid, ctx) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Real x = (lo + hi) / 2;
  Real tol = ctx.tol();
  for (int i = 0; i < 100; ++i) {
    Real dx = h_of_lambda(x, ctx) / h_prime(x, ctx);
    x -= dx;
    if (boost::multiprecision::abs(dx) <= tol * ctx.pow10(-2)) break;
  }
  return x;
}

namespace detail {

/// i sqrt(1 - z^2): equals the principal (z^2 - 1)^{1/2} in the upper half
/// plane and continues it analytically across (-1, 1).
inline Complex upper_root(const Complex& z) { return times_i(sqrt(1L - z * z)); }

inline Complex i_lambda(const Real& lambda) { return {Real(0, lambda.precision()), lambda}; }

}  // namespace detail

/// varphi(z) = z + (z^2 - 1)^{1/2}.
inline Complex varphi(const Complex& z, BranchMode branch, const SCurve* curve,
                      const PrecisionContext& ctx) {
  return z + sqrt_zsq_minus_one(z, branch, curve, ctx);
}

/// phi(z) = 2 log varphi(z) + i lambda (z^2 - 1)^{1/2}.
inline Complex phi(const Complex& z, const Real& lambda, BranchMode branch, const SCurve* curve,
                   const PrecisionContext& ctx) {
  Complex s = sqrt_zsq_minus_one(z, branch, curve, ctx);
  return log(z + s) * 2L + detail::i_lambda(lambda) * s;
}

/// phi'(z) = (2 + i lambda z) / (z^2 - 1)^{1/2}.
inline Complex phi_prime(const Complex& z, const Real& lambda, BranchMode branch,
                         const SCurve* curve, const PrecisionContext& ctx) {
  Complex s = sqrt_zsq_minus_one(z, branch, curve, ctx);
  if (s.re() == 0 && s.im() == 0) throw PoleAt("phi' is singular at z = +-1");
  return (2L + detail::i_lambda(lambda) * z) / s;
}

/// xi(z) = i log varphi(z) - lambda (z^2 - 1)^{1/2} / 2 = i phi(z) / 2.
inline Complex xi(const Complex& z, const Real& lambda, BranchMode branch, const SCurve* curve,
                  const PrecisionContext& ctx) {
  Complex s = sqrt_zsq_minus_one(z, branch, curve, ctx);
  return times_i(log(z + s)) - s * lambda / 2L;
}

/// g(z) = log varphi(z) + (i lambda / 2)(z^2 - 1)^{1/2} - i lambda z / 2 - log 2.
inline Complex g_function(const Complex& z, const Real& lambda, BranchMode branch,
                          const SCurve* curve, const PrecisionContext& ctx) {
  Complex s = sqrt_zsq_minus_one(z, branch, curve, ctx);
  Complex il2 = detail::i_lambda(lambda) / 2L;
  return log(z + s) + il2 * s - il2 * z - ctx.ln2();
}

/// Equilibrium density psi(z) = -(2 + i lambda z) / (2 pi i (z^2 - 1)^{1/2}).
inline Complex equilibrium_density(const Complex& z, const Real& lambda, BranchMode branch,
                                   const SCurve* curve, const PrecisionContext& ctx) {
  Complex s = sqrt_zsq_minus_one(z, branch, curve, ctx);
  Complex num = 2L + detail::i_lambda(lambda) * z;
  // -1/(2 pi i) = i/(2 pi)
  return times_i(num / s) / (ctx.pi() * 2);
}

/// w(z) = -i lambda / 2 + (2 + i lambda z) / (2 (z^2 - 1)^{1/2}).
inline Complex cauchy_transform_w(const Complex& z, const Real& lambda, BranchMode branch,
                                  const SCurve* curve, const PrecisionContext& ctx) {
  Complex s = sqrt_zsq_minus_one(z, branch, curve, ctx);
  Complex il = detail::i_lambda(lambda);
  return -il / 2L + (2L + il * z) / (s * 2L);
}

/// Q(z) = (2 + i lambda z)^2 / (4 (z^2 - 1)).
inline Complex Q_lambda(const Complex& z, const Real& lambda, const PrecisionContext& ctx) {
  Complex d = z * z - 1L;
  Real tol = ctx.tol();
  if (dist(z, Complex(ctx.one())) <= tol || dist(z, Complex(-ctx.one())) <= tol) {
    throw PoleAt("Q has poles at z = +-1");
  }
  Complex num = 2L + detail::i_lambda(lambda) * z;
  return num * num / (d * 4L);
}

/// Double zero z* = 2i / lambda of Q.
inline Complex z_star(const Real& lambda, const PrecisionContext& ctx) {
  if (lambda <= 0) throw DomainError("z* exists only for lambda > 0 (the double zero disappears)");
  return {ctx.zero(), 2 / ctx.real(lambda)};
}

enum class Regime { SINGLE_ARC, CRITICAL, TWO_ARC };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::SINGLE_ARC:
      return "SINGLE_ARC";
    case Regime::CRITICAL:
      return "CRITICAL";
    case Regime::TWO_ARC:
      return "TWO_ARC";
  }
  return "?";
}

struct QDClassification {
  Real lambda;
  Regime regime;
  std::optional<Complex> z_star;
  Real im_xi_zstar;
};

/// Regime from the sign of Im xi(z*) = log((sqrt(lambda^2+4)+2)/lambda) - sqrt(lambda^2+4)/2.
inline QDClassification classify(const Real& lambda, const PrecisionContext& ctx) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  if (lambda == 0) return {ctx.zero(), Regime::SINGLE_ARC, std::nullopt, ctx.zero()};
  Real v = h_of_lambda(lambda, ctx) / 2;
  Regime r = Regime::TWO_ARC;
  if (boost::multiprecision::abs(v) < ctx.tol()) {
    r = Regime::CRITICAL;
  } else if (v > 0) {
    r = Regime::SINGLE_ARC;
  }
  return {ctx.real(lambda), r, z_star(lambda, ctx), v};
}

namespace detail {

/// Re phi with the principal root, written without a logarithm branch:
/// 2 log|varphi| - lambda Im s.
inline Real re_phi(const Complex& z, const Real& lambda) {
  Complex s = principal_root(z);
  return boost::multiprecision::log(norm(z + s)) - lambda * s.im();
}

/// phi' with the principal root (valid in the closed upper half plane).
inline Complex phi_prime_principal(const Complex& z, const Real& lambda) {
  return (2L + i_lambda(lambda) * z) / principal_root(z);
}

/// Unit vector along the level lines of Re phi, oriented to agree with `ref`.
inline Complex level_tangent(const Complex& z, const Real& lambda, const Complex& ref) {
  Complex d = phi_prime_principal(z, lambda);
  Complex t = times_i(conj(d)) / abs(d);
  if (t.re() * ref.re() + t.im() * ref.im() < 0) t = -t;
  return t;
}

/// Newton correction of z onto {Re phi = level} along the gradient direction.
inline Complex correct_to_level(Complex z, const Real& lambda, const Real& level, const Real& tol,
                                int max_iter = 60) {
  for (int it = 0; it < max_iter; ++it) {
    Real f = re_phi(z, lambda) - level;
    if (boost::multiprecision::abs(f) <= tol) return z;
    Complex d = phi_prime_principal(z, lambda);
    Real ad = abs(d);
    // d/dn Re phi along n = conj(phi')/|phi'| equals |phi'|.
    z -= conj(d) / ad * (f / ad);
  }
  throw NonConvergence("level-set corrector did not converge near z = (" +
                       std::to_string(to_double(z.re())) + ", " +
                       std::to_string(to_double(z.im())) + ")");
}

/// One RK4 step of dz/ds = unit level tangent.
inline Complex rk4_step(const Complex& z, const Real& lambda, const Real& h, const Complex& ref) {
  Complex k1 = level_tangent(z, lambda, ref);
  Complex k2 = level_tangent(z + k1 * (h / 2), lambda, k1);
  Complex k3 = level_tangent(z + k2 * (h / 2), lambda, k2);
  Complex k4 = level_tangent(z + k3 * h, lambda, k3);
  return z + (k1 + k2 * 2L + k3 * 2L + k4) * (h / 6);
}

/// psi along the curve (boundary value from the left side, i.e. the upper form).
inline Complex density_upper(const Complex& z, const Real& lambda, const Real& pi) {
  Complex num = 2L + i_lambda(lambda) * z;
  return times_i(num / upper_root(z)) / (pi * 2);
}

/// Integration piece of the curve: either the chord a -> b, or, next to an
/// endpoint e, the arc z = e + v^2 with v linear between sqrt(a-e) and sqrt(b-e).
/// The substitution removes the inverse square-root singularity of psi at e.
struct Piece {
  bool endpoint;
  Complex e;
  Complex a;  // start parameter (z or v)
  Complex b;  // end parameter (z or v)

  Complex at(const Real& t) const {
    Complex u = a + (b - a) * t;
    return endpoint ? e + u * u : u;
  }
  /// dz/dt.
  Complex jacobian(const Real& t) const {
    if (!endpoint) return b - a;
    Complex u = a + (b - a) * t;
    return u * (b - a) * 2L;
  }
  Piece sub(const Real& t0, const Real& t1) const {
    return {endpoint, e, a + (b - a) * t0, a + (b - a) * t1};
  }
  Complex z_start() const { return endpoint ? e + a * a : a; }
  Complex z_end() const { return endpoint ? e + b * b : b; }
};

inline constexpr double kEndpointZone = 1.0;

inline Piece make_piece(const Complex& za, const Complex& zb) {
  Complex one(Real(1, za.precision()));
  Complex mone(Real(-1, za.precision()));
  double d1 = std::min(to_double(dist(za, one)), to_double(dist(zb, one)));
  double dm = std::min(to_double(dist(za, mone)), to_double(dist(zb, mone)));
  if (std::min(d1, dm) >= kEndpointZone) return {false, one, za, zb};
  const Complex& e = d1 <= dm ? one : mone;
  Complex vb = sqrt(zb - e);
  Complex va = sqrt(za - e);
  // Keep v on one sheet across the piece.
  if (norm(va + vb) < norm(va - vb)) va = -va;
  return {true, e, va, vb};
}

/// Splits an endpoint piece so that its parameter length does not exceed its
/// chord length; the piece touching the endpoint otherwise spans sqrt(step) in v.
inline std::vector<Piece> split_piece(const Piece& pc) {
  if (!pc.endpoint) return {pc};
  double lv = to_double(abs(pc.b - pc.a));
  double lz = to_double(dist(pc.z_start(), pc.z_end()));
  int k = lz > 0 ? static_cast<int>(std::ceil(lv / lz)) : 1;
  k = std::clamp(k, 1, 1000);
  if (k == 1) return {pc};
  std::vector<Piece> out;
  out.reserve(k);
  unsigned d = pc.a.precision();
  for (int j = 0; j < k; ++j) out.push_back(pc.sub(Real(j, d) / k, Real(j + 1, d) / k));
  return out;
}

/// Pieces covering the polyline in its orientation.
inline std::vector<Piece> curve_pieces(const SCurve& curve) {
  std::vector<Piece> pieces;
  const auto& p = curve.points();
  pieces.reserve(p.size() - 1);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    for (auto& pc : split_piece(make_piece(p[i], p[i + 1]))) pieces.push_back(std::move(pc));
  }
  return pieces;
}

/// sum over Gauss-Legendre nodes of f(z(t)) psi(z(t)) z'(t) on one piece.
inline Complex piece_integral(const Piece& pc, const Real& lambda, const GaussLegendre& gl,
                              const Real& pi, const std::function<Complex(const Complex&)>& f) {
  unsigned d = pc.a.precision();
  Complex sum(Real(0, d), Real(0, d));
  for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
    Real t = (gl.nodes[j] + 1) / 2;
    Complex z = pc.at(t);
    Complex v = density_upper(z, lambda, pi) * pc.jacobian(t) * (gl.weights[j] / 2);
    sum += f ? f(z) * v : v;
  }
  return sum;
}

/// Cumulative int psi dz along the polyline, 2-point Gauss-Legendre per piece.
inline std::vector<Complex> cumulative_mass(const std::vector<Complex>& points,
                                            const Real& lambda, const PrecisionContext& ctx) {
  GaussLegendre gl = gauss_legendre(2, ctx);
  Real pi = ctx.pi();
  std::vector<Complex> mass;
  mass.reserve(points.size());
  mass.push_back(Complex::zero(ctx));
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Complex m = mass.back();
    for (const auto& pc : split_piece(make_piece(points[i], points[i + 1]))) {
      m += piece_integral(pc, lambda, gl, pi, nullptr);
    }
    mass.push_back(std::move(m));
  }
  return mass;
}

}  // namespace detail

/// Traces the S-curve {Re phi = 0} from z = 1 through the upper half plane to
/// z = -1 and returns it oriented from -1 to 1.
///
/// RK4 predictor along the level tangent, Newton corrector along the normal to
/// |Re phi| <= curve_tol. The cumulative mass is the composite 2-point
/// Gauss-Legendre integral of psi along the polyline.
inline SCurve trace_scurve(const Real& lambda, const Real& step, const Real& curve_tol,
                           const PrecisionContext& ctx) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  if (step <= 0 || step > Real(0.5)) throw DomainError("step must lie in (0, 0.5]");
  Real lam = ctx.real(lambda);
  Real h = ctx.real(step);
  std::vector<Complex> pts;
  std::vector<Complex> tan;

  if (lam == 0) {
    long m = static_cast<long>(std::ceil(to_double(2 / h)));
    for (long k = 0; k <= m; ++k) {
      pts.emplace_back(ctx.real(-1) + ctx.real(2) * k / m, ctx.zero());
      tan.push_back(Complex::one(ctx));
    }
  } else {
    Real lambda0 = solve_lambda0(ctx);
    if (lam >= lambda0 - ctx.tol()) {
      throw DomainError("S-curve tracing requires lambda < lambda0 = 1.3254868...");
    }
    Real theta = 2 * boost::multiprecision::atan(2 / lam);
    Complex dir0 = polar(ctx.one(), theta);
    Complex z = Complex::one(ctx) + dir0 * h;
    z = detail::correct_to_level(z, lam, ctx.zero(), curve_tol);
    pts.push_back(Complex::one(ctx));
    tan.push_back(dir0);
    Complex ref = dir0;
    Complex mone(-ctx.one());
    const long max_steps = static_cast<long>(to_double(50 / h)) + 1000;
    for (long k = 0;; ++k) {
      if (k > max_steps) throw NonConvergence("S-curve tracer exceeded its step budget");
      if (to_double(abs(z)) > 10) throw NonConvergence("S-curve left the bounding box |z| <= 10");
      pts.push_back(z);
      Complex t = detail::level_tangent(z, lam, ref);
      tan.push_back(t);
      ref = t;
      if (dist(z, mone) < h * 1.5) break;
      Complex next = detail::rk4_step(z, lam, h, ref);
      z = detail::correct_to_level(next, lam, ctx.zero(), curve_tol);
    }
    pts.push_back(mone);
    // Arrival direction at -1 mirrors the launch direction at 1.
    tan.push_back(-conj(dir0));
    std::reverse(pts.begin(), pts.end());
    std::reverse(tan.begin(), tan.end());
    for (auto& t : tan) t = -t;
  }

  std::vector<Complex> cm = detail::cumulative_mass(pts, lam, ctx);
  std::vector<Real> mass;
  mass.reserve(cm.size());
  for (auto& m : cm) mass.push_back(m.re());
  return SCurve(lam, std::move(pts), std::move(tan), std::move(mass), h);
}

/// int_gamma f(s) psi(s) ds along the traced curve with an m-point
/// Gauss-Legendre rule on every piece (endpoint pieces use z = e + v^2).
inline Complex curve_integral(const SCurve& curve, const std::function<Complex(const Complex&)>& f,
                              const PrecisionContext& ctx, int order = 4) {
  GaussLegendre gl = gauss_legendre(order, ctx);
  Real pi = ctx.pi();
  Complex sum = Complex::zero(ctx);
  for (const auto& pc : detail::curve_pieces(curve)) {
    sum += detail::piece_integral(pc, curve.lambda(), gl, pi, f);
  }
  return sum;
}

/// Whether z lies between [-1, 1] and the curve, with the context tolerance.
inline bool in_lens_region(const Complex& z, const SCurve& curve, const PrecisionContext& ctx) {
  return in_lens_region(z, curve, ctx.tol());
}

/// max over curve points of |Re(2g - V - l)| = |Re phi|, using the boundary
/// value from the left of the curve.
inline Real variational_residual(const SCurve& curve, const PrecisionContext& ctx) {
  Real worst = ctx.zero();
  const Real& lam = curve.lambda();
  for (const auto& z : curve.points()) {
    Complex s = detail::upper_root(z);
    Complex v = z + s;
    if (v.re() == 0 && v.im() == 0) continue;
    Real r = boost::multiprecision::log(norm(v)) - lam * s.im();
    worst = std::max(worst, Real(boost::multiprecision::abs(r)));
  }
  return worst;
}

namespace detail {

/// Logarithmic potential U(z) = -int log|z - s| dmu(s) of the equilibrium
/// measure, by quadrature of log(z - s) psi(s) ds along the polyline with the
/// argument of z - s continued along the path.
class LogPotential {
 public:
  LogPotential(const SCurve& curve, const PrecisionContext& ctx)
      : curve_(curve), ctx_(ctx), pi_(ctx.pi()), gl4_(gauss_legendre(4, ctx)),
        gl10_(gauss_legendre(10, ctx)), pieces_(curve_pieces(curve)) {
    for (const auto& pc : pieces_) {
      std::vector<std::pair<Complex, Complex>> nodes;
      for (std::size_t j = 0; j < gl4_.nodes.size(); ++j) {
        Real t = (gl4_.nodes[j] + 1) / 2;
        Complex z = pc.at(t);
        nodes.emplace_back(z, density_upper(z, curve.lambda(), pi_) * pc.jacobian(t) *
                                  (gl4_.weights[j] / 2));
      }
      far_.push_back(std::move(nodes));
      ends_.emplace_back(to_cdouble(pc.z_start()), to_cdouble(pc.z_end()));
      length_.push_back(std::abs(ends_.back().second - ends_.back().first));
    }
  }

  Real operator()(const Complex& z) const {
    Accumulator acc{Complex::zero(ctx_), 0.0, false, pi_};
    std::complex<double> zd = to_cdouble(z);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      double d = segment_distance(ends_[i].first, ends_[i].second, zd);
      if (d >= 50 * length_[i]) {
        for (const auto& [s, w] : far_[i]) acc.add(z, s, w);
      } else {
        near(pieces_[i], z, acc, 0);
      }
    }
    return -acc.sum.re();
  }

 private:
  struct Accumulator {
    Complex sum;
    double last_arg;
    bool started;
    Real pi;

    void add(const Complex& z, const Complex& s, const Complex& w) {
      Complex d = z - s;
      Real a = arg(d);
      if (started) {
        double k = std::round((last_arg - to_double(a)) / (2 * M_PI));
        if (k != 0) a += pi * 2 * static_cast<long>(k);
      }
      last_arg = to_double(a);
      started = true;
      Complex lg(boost::multiprecision::log(norm(d)) / 2, a);
      sum += lg * w;
    }
  };

  void near(const Piece& pc, const Complex& z, Accumulator& acc, int depth) const {
    double len = to_double(dist(pc.z_start(), pc.z_end()));
    double d = segment_distance(to_cdouble(pc.z_start()), to_cdouble(pc.z_end()), to_cdouble(z));
    if (len > d / 3 && depth < 60) {
      Real half = ctx_.real(0.5);
      near(pc.sub(ctx_.zero(), half), z, acc, depth + 1);
      near(pc.sub(half, ctx_.one()), z, acc, depth + 1);
      return;
    }
    for (std::size_t j = 0; j < gl10_.nodes.size(); ++j) {
      Real t = (gl10_.nodes[j] + 1) / 2;
      Complex s = pc.at(t);
      acc.add(z, s,
              density_upper(s, curve_.lambda(), pi_) * pc.jacobian(t) * (gl10_.weights[j] / 2));
    }
  }

  const SCurve& curve_;
  PrecisionContext ctx_;
  Real pi_;
  GaussLegendre gl4_;
  GaussLegendre gl10_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<std::pair<Complex, Complex>>> far_;
  std::vector<std::pair<std::complex<double>, std::complex<double>>> ends_;
  std::vector<double> length_;
};

}  // namespace detail

/// S-property residuals |dF/dn_+ - dF/dn_-| of F = U + Re V / 2 at
/// `sample_count` curve vertices spread over the middle 90% of the arc length.
///
/// Each one-sided normal derivative uses the second-order stencil
/// (-3F(0) + 4F(h) - F(2h)) / (2h); F(0) cancels in the difference.
inline std::vector<Real> s_property_residual(const SCurve& curve, int sample_count,
                                             const Real& hstep, const PrecisionContext& ctx) {
  if (sample_count < 1) throw DomainError("sample_count must be positive");
  detail::LogPotential U(curve, ctx);
  const Real& lam = curve.lambda();
  auto F = [&](const Complex& z) { return U(z) + lam * z.im() / 2; };
  Real h = ctx.real(hstep);
  std::vector<Real> out;
  const auto& arc = curve.arclength();
  double total = curve.length();
  for (int k = 0; k < sample_count; ++k) {
    double target = total * (0.05 + 0.9 * (k + 0.5) / sample_count);
    std::size_t i = static_cast<std::size_t>(std::lower_bound(arc.begin(), arc.end(), target) -
                                             arc.begin());
    i = std::clamp<std::size_t>(i, 1, curve.size() - 2);
    const Complex& z0 = curve.points()[i];
    Complex n = times_i(curve.tangents()[i]);
    Real fp1 = F(z0 + n * h), fm1 = F(z0 - n * h);
    Real fp2 = F(z0 + n * (2 * h)), fm2 = F(z0 - n * (2 * h));
    Real r = (4 * (fp1 - fm1) - (fp2 - fm2)) / (2 * h);
    out.push_back(boost::multiprecision::abs(r));
  }
  return out;
}

/// Level-set trajectory of Im xi through z0.
struct Trajectory {
  enum class Origin { ENDPOINT_PLUS, ENDPOINT_MINUS, Z_STAR, REGULAR };
  enum class Termination { REACHED_POLE, LEFT_BOX, CLOSED_LOOP, CROSSED_REAL_AXIS };

  std::vector<Complex> points;
  Origin origin;
  Termination termination;
  Real level;  ///< Im xi along the trajectory
  std::optional<Real> real_crossing;
};

inline const char* termination_name(Trajectory::Termination t) {
  switch (t) {
    case Trajectory::Termination::REACHED_POLE:
      return "reached_pole";
    case Trajectory::Termination::LEFT_BOX:
      return "left_box";
    case Trajectory::Termination::CLOSED_LOOP:
      return "closed_loop";
    case Trajectory::Termination::CROSSED_REAL_AXIS:
      return "crossed_real_axis";
  }
  return "?";
}

inline const char* origin_name(Trajectory::Origin o) {
  switch (o) {
    case Trajectory::Origin::ENDPOINT_PLUS:
      return "endpoint_+1";
    case Trajectory::Origin::ENDPOINT_MINUS:
      return "endpoint_-1";
    case Trajectory::Origin::Z_STAR:
      return "z_star";
    case Trajectory::Origin::REGULAR:
      return "regular";
  }
  return "?";
}

/// The four directions in which trajectories leave z*: the angles a with
/// xi''(z*) e^{2ia} real.
inline std::array<Real, 4> zstar_launch_angles(const Real& lambda, const PrecisionContext& ctx) {
  Complex zs = z_star(lambda, ctx);
  // xi'' = i phi''/2 and phi''(z*) = i lambda / s(z*) since 2 + i lambda z* = 0.
  Complex xi2 = times_i(detail::i_lambda(ctx.real(lambda)) / detail::principal_root(zs)) / 2L;
  Real base = -arg(xi2) / 2;
  Real pi = ctx.pi();
  std::array<Real, 4> out{base, base + pi / 2, base + pi, base + pi * 3 / 2};
  for (auto& a : out) {
    while (a > pi) a -= 2 * pi;
    while (a <= -pi) a += 2 * pi;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

/// Im xi on the real axis as the limit from the upper half plane.
inline Real im_xi_real_axis(const Real& x, const Real& lambda) {
  using boost::multiprecision::abs;
  using boost::multiprecision::log;
  using boost::multiprecision::sqrt;
  if (abs(x) <= 1) return -lambda * sqrt(1 - x * x) / 2;
  return log(abs(x) + sqrt(x * x - 1));
}

/// Root of im_xi_real_axis(x) = level in the interval [lo, hi] by bisection.
inline Real solve_real_crossing(Real lo, Real hi, const Real& lambda, const Real& level,
                                const Real& tol) {
  Real flo = im_xi_real_axis(lo, lambda) - level;
  for (int i = 0; i < 400 && hi - lo > tol; ++i) {
    Real mid = (lo + hi) / 2;
    Real fm = im_xi_real_axis(mid, lambda) - level;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace detail

/// Traces the trajectory {Im xi = Im xi(z0)} through the upper half plane,
/// starting in direction `heading` (a unit complex number). At z* the first
/// step is taken exactly along `heading`; elsewhere the heading only selects
/// the orientation of the level tangent.
///
/// Stops at a pole (+-1), on leaving |z| <= box, on closing a loop, or on
/// reaching the real axis, where the crossing abscissa is solved exactly.
inline Trajectory trace_trajectory(const Complex& z0, const Real& lambda, const Complex& heading,
                                   const Real& step, const PrecisionContext& ctx,
                                   double box = 10.0) {
  Real lam = ctx.real(lambda);
  Real h = ctx.real(step);
  Real tol = ctx.tol();
  Complex one = Complex::one(ctx), mone(-ctx.one());
  if (dist(z0, one) <= tol || dist(z0, mone) <= tol) {
    throw DomainError("trajectories from the poles +-1 are traced by trace_scurve");
  }
  if (z0.im() < 0) throw DomainError("trajectories are traced from the closed upper half plane");
  Trajectory tr;
  tr.origin = Trajectory::Origin::REGULAR;
  Complex z = round_to(z0, ctx);
  Real level = detail::re_phi(z, lam);
  tr.level = level / 2;
  Real curve_tol = ctx.pow10(-static_cast<int>(ctx.certified_digits()) / 2);
  Complex dir = heading / abs(heading);
  bool at_zstar = lam > 0 && dist(z, z_star(lam, ctx)) <= tol;
  tr.points.push_back(z);
  if (at_zstar) {
    tr.origin = Trajectory::Origin::Z_STAR;
    z = detail::correct_to_level(z + dir * h, lam, level, curve_tol);
  } else {
    z = detail::correct_to_level(detail::rk4_step(z, lam, h, dir), lam, level, curve_tol);
  }
  Complex ref = dir;
  const long max_steps = static_cast<long>(to_double(200 / h)) + 1000;
  for (long k = 0;; ++k) {
    if (k > max_steps) throw NonConvergence("trajectory tracer exceeded its step budget");
    if (z.im() <= 0) {
      // Crossing between the last accepted point and z.
      const Complex& a = tr.points.back();
      Real t = a.im() / (a.im() - z.im());
      Real x = a.re() + (z.re() - a.re()) * t;
      Real w = h * 4;
      Real lo = x - w, hi = x + w;
      Real target = tr.level;
      // Keep the bracket inside one analytic piece of the real-axis formula.
      if (x > 1 && lo < 1) lo = ctx.one();
      if (x < -1 && hi > -1) hi = -ctx.one();
      if (boost::multiprecision::abs(x) < 1) {
        if (hi > 1) hi = ctx.one();
        if (lo < -1) lo = -ctx.one();
      }
      Real root = detail::solve_real_crossing(lo, hi, lam, target, tol);
      tr.points.emplace_back(root, ctx.zero());
      tr.real_crossing = root;
      tr.termination = Trajectory::Termination::CROSSED_REAL_AXIS;
      return tr;
    }
    if (z.im() > 0) tr.points.push_back(z);
    if (dist(z, one) < h * 1.5 || dist(z, mone) < h * 1.5) {
      tr.points.push_back(dist(z, one) < h * 1.5 ? one : mone);
      tr.termination = Trajectory::Termination::REACHED_POLE;
      return tr;
    }
    if (to_double(abs(z)) > box) {
      tr.termination = Trajectory::Termination::LEFT_BOX;
      return tr;
    }
    if (k > 10 && dist(z, tr.points.front()) < h * 1.5) {
      tr.points.push_back(tr.points.front());
      tr.termination = Trajectory::Termination::CLOSED_LOOP;
      return tr;
    }
    Complex t = detail::level_tangent(z, lam, ref);
    ref = t;
    Complex next = detail::rk4_step(z, lam, h, ref);
    // Below the axis the principal root changes sheet; hand over to the crossing solve.
    z = next.im() <= 0 ? next : detail::correct_to_level(next, lam, level, curve_tol);
  }
}

}  // namespace oscgauss

#endif  // OSCGAUSS_POTENTIAL_HPP
