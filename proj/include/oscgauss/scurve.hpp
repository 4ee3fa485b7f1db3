#ifndef OSCGAUSS_SCURVE_HPP
#define OSCGAUSS_SCURVE_HPP

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "complex.hpp"

namespace oscgauss {

/// A traced S-curve: oriented polyline from -1 to 1 with unit tangents and the
/// cumulative equilibrium mass at each vertex.
///
/// The double-precision shadow of the vertices is derived data used to skip
/// exact geometry far away from the curve.
class SCurve {
 public:
  SCurve(Real lambda, std::vector<Complex> points, std::vector<Complex> tangents,
         std::vector<Real> mass, Real step)
      : lambda_(std::move(lambda)),
        points_(std::move(points)),
        tangents_(std::move(tangents)),
        mass_(std::move(mass)),
        step_(std::move(step)) {
    if (points_.size() < 2 || tangents_.size() != points_.size() ||
        mass_.size() != points_.size()) {
      throw DomainError("S-curve needs at least two vertices with matching tangents and mass");
    }
    shadow_.reserve(points_.size());
    for (const auto& p : points_) shadow_.push_back(to_cdouble(p));
    arclength_.reserve(points_.size());
    double s = 0.0;
    arclength_.push_back(0.0);
    for (std::size_t i = 1; i < shadow_.size(); ++i) {
      s += std::abs(shadow_[i] - shadow_[i - 1]);
      arclength_.push_back(s);
    }
  }

  const Real& lambda() const noexcept { return lambda_; }
  const std::vector<Complex>& points() const noexcept { return points_; }
  const std::vector<Complex>& tangents() const noexcept { return tangents_; }
  const std::vector<Real>& mass() const noexcept { return mass_; }
  const Real& step() const noexcept { return step_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// The lambda = 0 curve is the segment [-1, 1] itself.
  bool is_segment() const { return lambda_ == 0; }

  const std::vector<std::complex<double>>& shadow() const noexcept { return shadow_; }
  /// Cumulative polyline arc length at each vertex (double precision).
  const std::vector<double>& arclength() const noexcept { return arclength_; }
  double length() const noexcept { return arclength_.back(); }

  unsigned precision() const { return points_.front().precision(); }

 private:
  Real lambda_;
  std::vector<Complex> points_;
  std::vector<Complex> tangents_;
  std::vector<Real> mass_;
  Real step_;
  std::vector<std::complex<double>> shadow_;
  std::vector<double> arclength_;
};

/// Nearest point of the polyline to a query point.
struct CurveProjection {
  std::size_t segment;  ///< index i of segment [p_i, p_{i+1}]
  Real fraction;        ///< position within the segment, in [0, 1]
  Real distance;
  Complex point;
  Real mass;   ///< linearly interpolated cumulative mass
  double arc;  ///< arc-length parameter of the projection
};

namespace detail {

inline double segment_distance(std::complex<double> a, std::complex<double> b,
                               std::complex<double> z) {
  std::complex<double> d = b - a;
  double len2 = std::norm(d);
  double t = len2 > 0 ? std::real((z - a) * std::conj(d)) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

inline CurveProjection project_on_segment(const SCurve& c, std::size_t i, const Complex& z) {
  const Complex& a = c.points()[i];
  const Complex& b = c.points()[i + 1];
  Complex d = b - a;
  Real len2 = norm(d);
  Complex w = z - a;
  Real t = len2 > 0 ? Real((w.re() * d.re() + w.im() * d.im()) / len2) : Real(0, z.precision());
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  Complex p = a + d * t;
  Real m = c.mass()[i] + (c.mass()[i + 1] - c.mass()[i]) * t;
  double arc = c.arclength()[i] + to_double(t) * (c.arclength()[i + 1] - c.arclength()[i]);
  Real d2 = dist(z, p);
  return CurveProjection{i, std::move(t), std::move(d2), std::move(p), std::move(m), arc};
}

}  // namespace detail

/// Exact nearest-segment projection of z onto the polyline.
inline CurveProjection project(const SCurve& curve, const Complex& z) {
  const auto& sh = curve.shadow();
  std::complex<double> zd = to_cdouble(z);
  std::vector<double> approx(sh.size() - 1);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < sh.size(); ++i) {
    approx[i] = detail::segment_distance(sh[i], sh[i + 1], zd);
    best = std::min(best, approx[i]);
  }
  // Re-examine every segment that could be nearest once rounding is accounted for.
  double slack = 1e-12 * (1.0 + std::abs(zd)) + 1e-9 * best;
  std::optional<CurveProjection> result;
  for (std::size_t i = 0; i + 1 < sh.size(); ++i) {
    if (approx[i] > best + slack) continue;
    CurveProjection cand = detail::project_on_segment(curve, i, z);
    if (!result || cand.distance < result->distance) result = std::move(cand);
  }
  return std::move(*result);
}

/// Distance from z to the polyline.
inline Real distance_to_curve(const SCurve& curve, const Complex& z) {
  return project(curve, z).distance;
}

/// Whether z lies in the region enclosed by [-1, 1] and the curve.
///
/// Crossing-count test against the closed polygon curve + segment. Raises
/// OnBoundary within `tol` of either boundary. The region is empty for the
/// lambda = 0 curve.
inline bool in_lens_region(const Complex& z, const SCurve& curve, const Real& tol) {
  if (curve.is_segment()) return false;
  if (z.im() < -tol) return false;
  if (boost::multiprecision::abs(z.im()) <= tol && z.re() >= -1 - tol && z.re() <= 1 + tol) {
    throw OnBoundary("point lies on the segment [-1, 1]");
  }
  if (z.im() < 0) return false;

  const auto& sh = curve.shadow();
  std::complex<double> zd = to_cdouble(z);
  double near = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < sh.size(); ++i) {
    near = std::min(near, detail::segment_distance(sh[i], sh[i + 1], zd));
  }
  if (near < 1e-9) {
    if (distance_to_curve(curve, z) <= tol) throw OnBoundary("point lies on the S-curve");
  }

  // Horizontal ray to the right; the closing edge on the real axis never
  // crosses a ray with Im z > 0.
  const auto& pts = curve.points();
  bool inside = false;
  if (near > 1e-9 && z.im() > 1e-9) {
    for (std::size_t i = 0; i + 1 < sh.size(); ++i) {
      std::complex<double> a = sh[i], b = sh[i + 1];
      if ((a.imag() > zd.imag()) != (b.imag() > zd.imag())) {
        double x = a.real() + (zd.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
        if (x > zd.real()) inside = !inside;
      }
    }
    return inside;
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Complex& a = pts[i];
    const Complex& b = pts[i + 1];
    if ((a.im() > z.im()) != (b.im() > z.im())) {
      Real x = a.re() + (z.im() - a.im()) * (b.re() - a.re()) / (b.im() - a.im());
      if (x > z.re()) inside = !inside;
    }
  }
  return inside;
}

}  // namespace oscgauss

#endif  // OSCGAUSS_SCURVE_HPP
