#ifndef OSCGAUSS_VERIFY_HPP
#define OSCGAUSS_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "orthopoly.hpp"
#include "potential.hpp"

namespace oscgauss {

/// Distances of the zeros of p_n to the traced curve.
struct ZeroCurveReport {
  int n;
  Real lambda;
  Real max_dist;
  Real mean_dist;
  std::vector<Complex> zeros;    ///< sorted by real then imaginary part
  std::vector<Real> distances;   ///< per zero
  std::vector<Real> parameters;  ///< cumulative mass at the projection of each zero
};

/// Kolmogorov-type distance between the zero counting measure and the
/// equilibrium measure along the curve.
struct CdfReport {
  int n;
  Real lambda;
  Real ks_stat;
};

enum class Quantity { A_SQ, B, OUTER, INNER, ENDPOINT };

inline const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::A_SQ:
      return "a_sq";
    case Quantity::B:
      return "b";
    case Quantity::OUTER:
      return "outer";
    case Quantity::INNER:
      return "inner";
    case Quantity::ENDPOINT:
      return "endpoint";
  }
  return "?";
}

inline Quantity parse_quantity(const std::string& s) {
  for (Quantity q : {Quantity::A_SQ, Quantity::B, Quantity::OUTER, Quantity::INNER,
                     Quantity::ENDPOINT}) {
    if (s == quantity_name(q)) return q;
  }
  throw DomainError("unknown quantity '" + s + "' (expected a_sq, b, outer, inner, endpoint)");
}

struct ConvergenceRow {
  int n;
  std::optional<Complex> computed;
  std::optional<Complex> predicted;
  std::optional<Real> abs_err;
  /// For a_sq and b: deviation relative to the predicted n^-2 correction.
  /// For the formulas: relative to the computed p_n(z).
  std::optional<Real> rel_err;
  std::string failure;  ///< nonempty when the row could not be computed
};

struct ConvergenceTable {
  Quantity quantity;
  Real lambda;
  std::optional<Complex> z;
  std::vector<ConvergenceRow> rows;
  std::optional<double> fitted_order;      ///< of abs_err
  std::optional<double> fitted_order_rel;  ///< of rel_err
};

inline ZeroCurveReport zero_curve_report(std::vector<Complex> zeros, const SCurve& curve) {
  if (zeros.empty()) throw DomainError("zero_curve_report needs at least one zero");
  std::sort(zeros.begin(), zeros.end(), detail::zero_order);
  unsigned d = zeros.front().precision();
  std::vector<Real> dist, param;
  Real mx(0, d), sum(0, d);
  for (const auto& z : zeros) {
    CurveProjection p = project(curve, z);
    mx = std::max(mx, p.distance);
    sum += p.distance;
    dist.push_back(p.distance);
    param.push_back(p.mass);
  }
  int n = static_cast<int>(zeros.size());
  Real mean = sum / n;
  return {n, curve.lambda(), mx, mean, std::move(zeros), std::move(dist), std::move(param)};
}

/// ks_stat = max_j |j/n - m_(j)| over the sorted projected masses m_(1) <= ... <= m_(n).
inline CdfReport cdf_report(const std::vector<Complex>& zeros, const SCurve& curve) {
  if (zeros.empty()) throw DomainError("cdf_report needs at least one zero");
  std::vector<Real> m;
  for (const auto& z : zeros) m.push_back(project(curve, z).mass);
  std::sort(m.begin(), m.end());
  int n = static_cast<int>(m.size());
  Real ks(0, m.front().precision());
  for (int j = 0; j < n; ++j) {
    Real e = boost::multiprecision::abs(Real(j + 1, ks.precision()) / n - m[j]);
    ks = std::max(ks, e);
  }
  if (ks > 1) ks = 1;
  return {n, curve.lambda(), ks};
}

/// Normalized orthogonality defect max_{k<n} |<p_n, x^k>| / |h_{n-1}|.
inline Real orthogonality_residual(const RecurrenceTable& rec, const MomentTable& mom, int n) {
  return detail::orthogonality_defect(rec, mom, n);
}

/// Least-squares slope of -log(err) against log(n); needs three positive errors.
inline std::optional<double> fit_order(const std::vector<int>& ns, const std::vector<double>& errs) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (errs[i] > 0 && std::isfinite(errs[i])) {
      x.push_back(std::log(static_cast<double>(ns[i])));
      y.push_back(-std::log(errs[i]));
    }
  }
  if (x.size() < 3) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= x.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

/// Default evaluation point of each formula: 2 + i for the outer formula,
/// 1 + 0.02i for the endpoint formula, and the point 0.05 to the left of the
/// curve at half mass for the inner formula.
inline Complex default_test_point(Quantity q, const SCurve& curve, const PrecisionContext& ctx) {
  switch (q) {
    case Quantity::OUTER:
      return {ctx.real(2), ctx.one()};
    case Quantity::ENDPOINT:
      return {ctx.one(), ctx.real(2) / 100};
    case Quantity::INNER: {
      Complex p = detail::point_at_mass(curve, ctx.real(1) / 2);
      CurveProjection pr = project(curve, p);
      Complex t = curve.points()[pr.segment + 1] - curve.points()[pr.segment];
      return round_to(p + times_i(t / abs(t)) * (ctx.real(5) / 100), ctx);
    }
    default:
      throw DomainError("quantity has no evaluation point");
  }
}

/// Computed versus predicted values over a grid of degrees at fixed lambda.
///
/// For a_sq and b the table at omega = lambda n is built up to degree n + 1,
/// since b_n involves p_{n+1}. Formula rows compare against p_n evaluated
/// through the recurrence at the policy precision. ExistenceFailure marks the
/// row as failed without aborting the table.
inline ConvergenceTable convergence_table(Quantity q, const std::vector<int>& ns,
                                          const Real& lambda, const PrecisionContext& ctx,
                                          std::optional<Complex> z = std::nullopt,
                                          double step = kDefaultStep) {
  if (ns.size() < 3) throw DomainError("convergence_table needs at least three degrees");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1 || (i > 0 && ns[i] <= ns[i - 1])) {
      throw DomainError("degrees must be positive and strictly increasing");
    }
  }
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  Real lam = ctx.real(lambda);
  bool formula = q == Quantity::OUTER || q == Quantity::INNER || q == Quantity::ENDPOINT;
  std::optional<SCurve> curve;
  if (formula) {
    curve.emplace(trace_scurve(lam, ctx.real(step), ctx.real(kDefaultCurveTol), ctx));
    if (!z) z = default_test_point(q, *curve, ctx);
  }

  ConvergenceTable table{q, lam, z, {}, std::nullopt, std::nullopt};
  for (int n : ns) {
    ConvergenceRow row{n, std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}};
    try {
      Real omega = lam * n;
      if (!formula) {
        RecurrenceTable rec = recurrence(n + 1, omega, ctx);
        auto [pa, pb] = recurrence_asymptotics(n, lam, ctx);
        Complex comp = round_to(q == Quantity::A_SQ ? rec.a_sq[n] : rec.b[n], ctx);
        Complex pred = q == Quantity::A_SQ ? pa : pb;
        Complex base = q == Quantity::A_SQ ? Complex(ctx.real(1) / 4) : Complex::zero(ctx);
        Real err = abs(comp - pred);
        Real scale = abs(pred - base);
        row.computed = comp;
        row.predicted = pred;
        row.abs_err = err;
        if (scale > 0) row.rel_err = Real(err / scale);
      } else {
        RecurrenceTable rec = recurrence(n, omega, ctx);
        PrecisionContext pctx(rec.digits(), ctx.guard());
        Complex comp = round_to(eval_poly(rec, n, round_to(*z, pctx)), ctx);
        Complex pred = Complex::zero(ctx);
        if (q == Quantity::OUTER) {
          pred = outer_pn(*z, n, lam, *curve, ctx);
        } else if (q == Quantity::INNER) {
          pred = inner_pn(*z, n, lam, *curve, ctx);
        } else {
          int which = z->re() >= 0 ? 1 : -1;
          pred = endpoint_pn(*z, n, lam, *curve, which, ctx);
        }
        Real err = abs(comp - pred);
        row.computed = comp;
        row.predicted = pred;
        row.abs_err = err;
        if (abs(comp) > 0) row.rel_err = Real(err / abs(comp));
      }
    } catch (const ExistenceFailure& e) {
      row.failure = e.what();
    }
    table.rows.push_back(std::move(row));
  }

  std::vector<double> ea, er;
  for (const auto& r : table.rows) {
    ea.push_back(r.abs_err ? to_double(*r.abs_err) : 0.0);
    er.push_back(r.rel_err ? to_double(*r.rel_err) : 0.0);
  }
  table.fitted_order = fit_order(ns, ea);
  table.fitted_order_rel = fit_order(ns, er);
  return table;
}

}  // namespace oscgauss

#endif  // OSCGAUSS_VERIFY_HPP
