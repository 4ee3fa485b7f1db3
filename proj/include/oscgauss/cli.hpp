#ifndef OSCGAUSS_CLI_HPP
#define OSCGAUSS_CLI_HPP

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"

namespace oscgauss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitExistence = 3;
inline constexpr int kExitNumerics = 4;

struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::optional<std::string> omega;
  std::optional<std::string> lambda;
  unsigned digits = 50;
  unsigned guard = 5;
  std::string step = "1e-3";
  std::string tol = "1e-20";  ///< on-curve accuracy of traced curves
  std::string out;
  std::string format = "json";
  double delta = 0.1;
  double width = 0.1;
  std::string integrand = "exp";
  std::string formula = "auto";
  std::vector<std::string> points;
  std::string report = "convergence";
  std::string quantity = "a_sq";
  std::vector<int> grid;
};

inline Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["n"] = c.n ? Json(*c.n) : Json(nullptr);
  j["omega"] = c.omega ? Json(*c.omega) : Json(nullptr);
  j["lambda"] = c.lambda ? Json(*c.lambda) : Json(nullptr);
  j["digits"] = c.digits;
  j["guard"] = c.guard;
  j["step"] = c.step;
  j["tol"] = c.tol;
  j["out"] = c.out;
  j["format"] = c.format;
  j["delta"] = c.delta;
  j["width"] = c.width;
  j["integrand"] = c.integrand;
  j["formula"] = c.formula;
  j["points"] = c.points;
  j["report"] = c.report;
  j["quantity"] = c.quantity;
  j["grid"] = c.grid;
  return j;
}

/// Invalid configuration; maps to exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

namespace detail {

inline Real parse_real(const std::string& s, const PrecisionContext& ctx, const char* name) {
  try {
    return from_decimal(s, ctx.digits());
  } catch (const std::exception&) {
    throw ConfigError(std::string("--") + name + ": not a decimal number: '" + s + "'");
  }
}

inline Complex parse_point(const std::string& s, const PrecisionContext& ctx) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ConfigError("--point expects 're,im', got '" + s + "'");
  return {parse_real(s.substr(0, comma), ctx, "point"), parse_real(s.substr(comma + 1), ctx, "point")};
}

inline int require_n(const RunConfig& c) {
  if (!c.n) throw ConfigError(c.command + " requires --n");
  if (*c.n < 1) throw ConfigError("--n must be at least 1");
  return *c.n;
}

/// (omega, lambda) from exactly one of --omega / --lambda and --n.
inline std::pair<Real, Real> frequency(const RunConfig& c, const PrecisionContext& ctx) {
  int n = require_n(c);
  if (c.omega.has_value() == c.lambda.has_value()) {
    throw ConfigError(c.command + " requires exactly one of --omega and --lambda");
  }
  ProblemParams p = c.omega ? ProblemParams::from_omega(n, parse_real(*c.omega, ctx, "omega"), ctx)
                            : ProblemParams::from_lambda(n, parse_real(*c.lambda, ctx, "lambda"), ctx);
  return {p.omega, p.lambda};
}

/// lambda from --lambda, or from --omega / --n.
inline Real lambda_only(const RunConfig& c, const PrecisionContext& ctx) {
  if (c.lambda && c.omega) throw ConfigError("give only one of --omega and --lambda");
  if (c.lambda) {
    Real l = parse_real(*c.lambda, ctx, "lambda");
    if (l < 0) throw ConfigError("--lambda must be nonnegative");
    return l;
  }
  if (c.omega && c.n) return frequency(c, ctx).second;
  throw ConfigError(c.command + " requires --lambda (or --omega with --n)");
}

/// Curve for initial zero guesses when lambda admits one.
inline std::optional<SCurve> init_curve(const Real& lambda, const PrecisionContext& ctx) {
  if (lambda <= 0 || lambda >= solve_lambda0(ctx) - Real("0.01", ctx.digits())) return std::nullopt;
  return trace_scurve(lambda, ctx.real(1) / 100, ctx.real(kDefaultCurveTol), ctx);
}

inline SCurve traced_curve(const RunConfig& c, const Real& lambda, const PrecisionContext& ctx) {
  return trace_scurve(lambda, parse_real(c.step, ctx, "step"), parse_real(c.tol, ctx, "tol"), ctx);
}

inline Integrand builtin_integrand(const std::string& name) {
  if (name == "one") return [](const Complex& z) { return Complex(Real(1, z.precision())); };
  if (name == "exp") return [](const Complex& z) { return exp(z); };
  if (name == "cos") return [](const Complex& z) { return cos(z); };
  if (name == "cauchy2") return [](const Complex& z) { return Complex(Real(1, z.precision())) / (z - 2L); };
  throw ConfigError("unknown integrand '" + name + "' (expected one, exp, cos, cauchy2)");
}

struct Artifact {
  std::string kind;
  Json json;
  std::string csv;
};

inline Artifact cmd_lambda0(const PrecisionContext& ctx) {
  Real l0 = solve_lambda0(ctx);
  Real h = h_of_lambda(l0, ctx);
  Json j;
  j["digits"] = ctx.digits();
  j["lambda0"] = to_json(l0);
  j["h_lambda0"] = to_json(h);
  Csv c({"lambda0", "h_lambda0"});
  c.add({to_decimal(l0), to_decimal(h)});
  return {"lambda0", j, c.str()};
}

inline Artifact cmd_moments(const RunConfig& c, const PrecisionContext& ctx) {
  auto [omega, lam] = frequency(c, ctx);
  MomentTable m = moments(omega, 2 * *c.n, ctx);
  return {"moments", to_json(m), csv(m)};
}

inline Artifact cmd_recurrence(const RunConfig& c, const PrecisionContext& ctx) {
  auto [omega, lam] = frequency(c, ctx);
  RecurrenceTable r = recurrence(*c.n, omega, ctx);
  r.require(*c.n);
  return {"recurrence", to_json(r), csv(r)};
}

inline Artifact cmd_zeros(const RunConfig& c, const PrecisionContext& ctx) {
  auto [omega, lam] = frequency(c, ctx);
  RecurrenceTable r = recurrence(*c.n, omega, ctx);
  auto init = init_curve(lam, ctx);
  std::vector<Complex> zs = zeros(r, *c.n, ctx, init ? &*init : nullptr);
  for (auto& z : zs) z = round_to(z, ctx);
  Json j;
  j["digits"] = ctx.digits();
  j["n"] = *c.n;
  j["omega"] = to_json(omega);
  j["zeros"] = to_json(zs);
  Csv t({"index", "re", "im"});
  for (std::size_t k = 0; k < zs.size(); ++k) {
    t.add({std::to_string(k), to_decimal(zs[k].re()), to_decimal(zs[k].im())});
  }
  return {"zeros", j, t.str()};
}

inline Artifact cmd_quadrature(const RunConfig& c, const PrecisionContext& ctx) {
  auto [omega, lam] = frequency(c, ctx);
  RecurrenceTable r = recurrence(*c.n, omega, ctx);
  auto init = init_curve(lam, ctx);
  QuadratureRule q = quadrature_rule(r, *c.n, ctx, init ? &*init : nullptr);
  return {"quadrature", to_json(q), csv(q)};
}

inline Artifact cmd_integrate(const RunConfig& c, const PrecisionContext& ctx) {
  auto [omega, lam] = frequency(c, ctx);
  Integrand f = builtin_integrand(c.integrand);
  RecurrenceTable r = recurrence(*c.n, omega, ctx);
  auto init = init_curve(lam, ctx);
  QuadratureRule q = quadrature_rule(r, *c.n, ctx, init ? &*init : nullptr);
  Complex gauss = integrate(q, f);
  Complex ref = oracle_integrate(f, omega, ctx);
  Real rel = abs(ref) > 0 ? Real(abs(gauss - ref) / abs(ref)) : abs(gauss - ref);
  Json j;
  j["digits"] = ctx.digits();
  j["integrand"] = c.integrand;
  j["n"] = *c.n;
  j["omega"] = to_json(omega);
  j["gauss"] = to_json(gauss);
  j["oracle"] = to_json(ref);
  j["rel_diff"] = to_json(rel);
  Csv t({"integrand", "n", "omega", "gauss_re", "gauss_im", "oracle_re", "oracle_im", "rel_diff"});
  t.add({c.integrand, std::to_string(*c.n), to_decimal(omega), to_decimal(gauss.re()),
         to_decimal(gauss.im()), to_decimal(ref.re()), to_decimal(ref.im()), to_decimal(rel)});
  return {"integral", j, t.str()};
}

inline Artifact cmd_curve(const RunConfig& c, const PrecisionContext& ctx) {
  SCurve curve = traced_curve(c, lambda_only(c, ctx), ctx);
  return {"scurve", to_json(curve), csv(curve)};
}

inline Artifact cmd_trajectories(const RunConfig& c, const PrecisionContext& ctx) {
  Real lam = lambda_only(c, ctx);
  if (lam == 0) throw ConfigError("trajectories from z* require --lambda > 0");
  Real step = parse_real(c.step, ctx, "step");
  Complex zs = z_star(lam, ctx);
  std::vector<Trajectory> ts;
  for (const Real& a : zstar_launch_angles(lam, ctx)) {
    ts.push_back(trace_trajectory(zs, lam, polar(ctx.one(), a), step, ctx));
  }
  Json arr = Json::array();
  for (const auto& t : ts) arr.push_back(to_json(t));
  Json j;
  j["digits"] = ctx.digits();
  j["lambda"] = to_json(lam);
  j["trajectories"] = arr;
  return {"trajectories", j, csv(ts)};
}

inline Artifact cmd_classify(const RunConfig& c, const PrecisionContext& ctx) {
  QDClassification q = classify(lambda_only(c, ctx), ctx);
  return {"classification", to_json(q), csv(q)};
}

inline FormulaId parse_formula(const std::string& s, const Complex& z, const SCurve& curve,
                               const RegionRadii& radii) {
  if (s == "auto") return governing_formula(z, curve, radii);
  if (s == "outer") return FormulaId::OUTER;
  if (s == "inner") return FormulaId::INNER;
  if (s == "endpoint_p1") return FormulaId::ENDPOINT_P1;
  if (s == "endpoint_m1") return FormulaId::ENDPOINT_M1;
  throw ConfigError("unknown formula '" + s + "' (expected auto, outer, inner, endpoint_p1, endpoint_m1)");
}

inline Artifact cmd_asymptotics(const RunConfig& c, const PrecisionContext& ctx) {
  auto [omega, lam] = frequency(c, ctx);
  if (c.points.empty()) throw ConfigError("asymptotics requires at least one --point re,im");
  int n = *c.n;
  SCurve curve = traced_curve(c, lam, ctx);
  RegionRadii radii{c.delta, c.width};
  RecurrenceTable r = recurrence(n, omega, ctx);
  PrecisionContext pctx(r.digits(), ctx.guard());
  std::vector<PredictionRecord> recs;
  for (const auto& s : c.points) {
    Complex z = parse_point(s, ctx);
    FormulaId f = parse_formula(c.formula, z, curve, radii);
    Complex pred = predict(f, z, n, lam, curve, ctx, radii).value;
    Complex comp = round_to(eval_poly(r, n, round_to(z, pctx)), ctx);
    Real rel = abs(comp) > 0 ? Real(abs(pred - comp) / abs(comp)) : abs(pred - comp);
    recs.push_back({z, n, lam, f, pred, comp, rel});
  }
  Json arr = Json::array();
  for (const auto& p : recs) arr.push_back(to_json(p));
  Json j;
  j["digits"] = ctx.digits();
  j["records"] = arr;
  return {"predictions", j, csv(recs)};
}

inline Artifact cmd_verify(const RunConfig& c, const PrecisionContext& ctx) {
  std::vector<int> grid = c.grid.empty() ? std::vector<int>{20, 40, 80} : c.grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1])) {
      throw ConfigError("--grid must be positive and strictly increasing");
    }
  }
  if (!c.lambda) throw ConfigError("verify requires --lambda");
  Real lam = lambda_only(c, ctx);
  Json j;
  j["digits"] = ctx.digits();
  j["lambda"] = to_json(lam);
  if (c.report == "convergence") {
    ConvergenceTable t = convergence_table(parse_quantity(c.quantity), grid, lam, ctx,
                                           std::nullopt, to_double(parse_real(c.step, ctx, "step")));
    return {"convergence_table", to_json(t), csv(t)};
  }
  if (c.report == "zero_curve" || c.report == "cdf") {
    SCurve curve = traced_curve(c, lam, ctx);
    bool zc = c.report == "zero_curve";
    Json arr = Json::array();
    Csv t = zc ? Csv({"n", "index", "re", "im", "distance", "mass"}) : Csv({"n", "lambda", "ks_stat"});
    for (int n : grid) {
      RecurrenceTable r = recurrence(n, lam * n, ctx);
      std::vector<Complex> zs = zeros(r, n, ctx, curve.is_segment() ? nullptr : &curve);
      for (auto& z : zs) z = round_to(z, ctx);
      if (zc) {
        ZeroCurveReport rep = zero_curve_report(zs, curve);
        for (std::size_t k = 0; k < rep.zeros.size(); ++k) {
          t.add({std::to_string(n), std::to_string(k), to_decimal(rep.zeros[k].re()),
                 to_decimal(rep.zeros[k].im()), to_decimal(rep.distances[k]),
                 to_decimal(rep.parameters[k])});
        }
        arr.push_back(to_json(rep));
      } else {
        CdfReport rep = cdf_report(zs, curve);
        t.add({std::to_string(n), to_decimal(rep.lambda), to_decimal(rep.ks_stat)});
        arr.push_back(to_json(rep));
      }
    }
    j["reports"] = arr;
    return {zc ? "zero_curve_reports" : "cdf_reports", j, t.str()};
  }
  if (c.report == "orthogonality") {
    Json arr = Json::array();
    Csv t({"n", "digits", "residual"});
    for (int n : grid) {
      RecurrenceTable r = recurrence(n, lam * n, ctx);
      PrecisionContext wctx(r.digits(), ctx.guard());
      MomentTable m = moments(lam * n, 2 * n + 1, wctx);
      Real res = orthogonality_residual(r, m, n);
      Json e;
      e["n"] = n;
      e["digits"] = r.digits();
      e["residual"] = to_json(res);
      arr.push_back(e);
      t.add({std::to_string(n), std::to_string(r.digits()), to_decimal(res)});
    }
    j["residuals"] = arr;
    return {"orthogonality_residuals", j, t.str()};
  }
  throw ConfigError("unknown report '" + c.report +
                    "' (expected convergence, zero_curve, cdf, orthogonality)");
}

inline Artifact dispatch(const RunConfig& c, const PrecisionContext& ctx) {
  const std::string& k = c.command;
  if (k == "lambda0") return cmd_lambda0(ctx);
  if (k == "moments") return cmd_moments(c, ctx);
  if (k == "recurrence") return cmd_recurrence(c, ctx);
  if (k == "zeros") return cmd_zeros(c, ctx);
  if (k == "quadrature") return cmd_quadrature(c, ctx);
  if (k == "integrate") return cmd_integrate(c, ctx);
  if (k == "curve") return cmd_curve(c, ctx);
  if (k == "trajectories") return cmd_trajectories(c, ctx);
  if (k == "classify") return cmd_classify(c, ctx);
  if (k == "asymptotics") return cmd_asymptotics(c, ctx);
  if (k == "verify") return cmd_verify(c, ctx);
  throw ConfigError("unknown command '" + k + "'");
}

inline void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--n", c.n, "polynomial degree");
  app->add_option("--omega", c.omega, "frequency omega (decimal)");
  app->add_option("--lambda", c.lambda, "scaled frequency lambda = omega / n (decimal)");
  app->add_option("--digits", c.digits, "working decimal digits (>= 20)");
  app->add_option("--guard", c.guard, "guard digits");
  app->add_option("--step", c.step, "curve step (decimal)");
  app->add_option("--tol", c.tol, "on-curve accuracy of traced curves (decimal)");
  app->add_option("--out", c.out, "artifact path (default <command>.<format>)");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--delta", c.delta, "endpoint disc radius")->check(CLI::PositiveNumber);
  app->add_option("--width", c.width, "curve neighbourhood width")->check(CLI::PositiveNumber);
}

}  // namespace detail

/// Runs one command; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& err = std::cerr) {
  RunConfig cfg;
  CLI::App app{"Gaussian quadrature and asymptotics for the weight exp(i omega x) on [-1, 1]"};
  app.require_subcommand(1);
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"lambda0", "critical value lambda0 of the scaled frequency"},
      {"moments", "moments m_k, k = 0..2n"},
      {"recurrence", "recurrence coefficients up to degree n"},
      {"zeros", "zeros of p_n"},
      {"quadrature", "n-point Gaussian rule"},
      {"integrate", "apply the n-point rule to a built-in integrand"},
      {"curve", "trace the S-curve"},
      {"trajectories", "trajectories leaving z*"},
      {"classify", "regime of the quadratic differential"},
      {"asymptotics", "compare asymptotic formulas with p_n at given points"},
      {"verify", "diagnostic reports over a degree grid"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    detail::add_common(sub, cfg);
    std::string name = s.name;
    sub->callback([&cfg, name] { cfg.command = name; });
    if (name == "integrate") {
      sub->add_option("--integrand", cfg.integrand, "one, exp, cos or cauchy2");
    }
    if (name == "asymptotics") {
      sub->add_option("--formula", cfg.formula, "auto, outer, inner, endpoint_p1, endpoint_m1");
      sub->add_option("--point", cfg.points, "evaluation point re,im (repeatable)");
    }
    if (name == "verify") {
      sub->add_option("--report", cfg.report, "convergence, zero_curve, cdf, orthogonality");
      sub->add_option("--quantity", cfg.quantity, "a_sq, b, outer, inner, endpoint");
      sub->add_option("--grid", cfg.grid, "degrees, strictly increasing")->delimiter(',');
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitConfig;
  }

  try {
    PrecisionContext ctx(cfg.digits, cfg.guard);
    detail::Artifact a = detail::dispatch(cfg, ctx);
    std::string path = cfg.out.empty() ? cfg.command + "." + cfg.format : cfg.out;
    std::string body =
        cfg.format == "json" ? envelope(a.kind, a.json).dump(2) + "\n" : a.csv;
    write_atomic(path, body);
    Json m;
    m["schema"] = kSchema;
    m["kind"] = "manifest";
    m["version"] = kVersion;
    m["artifact"] = path;
    m["artifact_kind"] = a.kind;
    m["config"] = config_json(cfg);
    Json args = Json::array();
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    m["argv"] = args;
    write_atomic(path + ".manifest.json", m.dump(2) + "\n");
    return kExitOk;
  } catch (const ExistenceFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitExistence;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const DegenerateNode& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace oscgauss::cli

#endif  // OSCGAUSS_CLI_HPP
