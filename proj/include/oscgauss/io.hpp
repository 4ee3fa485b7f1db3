#ifndef OSCGAUSS_IO_HPP
#define OSCGAUSS_IO_HPP

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "orthopoly.hpp"
#include "potential.hpp"
#include "verify.hpp"

namespace oscgauss {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "oscgauss/1";
inline constexpr const char* kVersion = "1.0.0";

// Scalars: decimal strings only.

inline Json to_json(const Real& x) { return to_decimal(x); }

inline Json to_json(const Complex& z) {
  Json j;
  j["re"] = to_decimal(z.re());
  j["im"] = to_decimal(z.im());
  return j;
}

inline Real real_from_json(const Json& j, unsigned digits) {
  if (!j.is_string()) throw DomainError("expected a decimal string");
  return from_decimal(j.get<std::string>(), digits);
}

inline Complex complex_from_json(const Json& j, unsigned digits) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
    throw DomainError("expected an object {re, im}");
  }
  return {real_from_json(j["re"], digits), real_from_json(j["im"], digits)};
}

inline Json to_json(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

inline Json to_json(const std::vector<Real>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline std::vector<Complex> complex_vector_from_json(const Json& j, unsigned digits) {
  std::vector<Complex> v;
  for (const auto& e : j) v.push_back(complex_from_json(e, digits));
  return v;
}

inline std::vector<Real> real_vector_from_json(const Json& j, unsigned digits) {
  std::vector<Real> v;
  for (const auto& e : j) v.push_back(real_from_json(e, digits));
  return v;
}

/// Versioned envelope around an artifact payload.
inline Json envelope(const std::string& kind, Json data) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  j["data"] = std::move(data);
  return j;
}

inline const Json& open_envelope(const Json& j, const std::string& kind) {
  if (j.value("schema", "") != kSchema) throw DomainError("unsupported schema tag");
  if (j.value("kind", "") != kind) {
    throw DomainError("artifact kind is '" + j.value("kind", "") + "', expected '" + kind + "'");
  }
  return j.at("data");
}

// Data types.

inline Json to_json(const MomentTable& t) {
  Json j;
  j["digits"] = t.omega.precision();
  j["omega"] = to_json(t.omega);
  j["m"] = to_json(t.m);
  return j;
}

inline MomentTable moments_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  return {real_from_json(j.at("omega"), d), complex_vector_from_json(j.at("m"), d)};
}

inline Json to_json(const RecurrenceTable& t) {
  Json j;
  j["digits"] = t.digits();
  j["omega"] = to_json(t.omega);
  j["n"] = t.n;
  j["a_sq"] = to_json(t.a_sq);
  j["b"] = to_json(t.b);
  j["h"] = to_json(t.h);
  Json ex = Json::array();
  for (bool e : t.exists) ex.push_back(e);
  j["exists"] = ex;
  j["pivot_floor"] = to_json(t.pivot_floor);
  j["failed_degree"] = t.failed_degree ? Json(*t.failed_degree) : Json(nullptr);
  return j;
}

inline RecurrenceTable recurrence_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  RecurrenceTable t{real_from_json(j.at("omega"), d),
                    j.at("n").get<int>(),
                    complex_vector_from_json(j.at("a_sq"), d),
                    complex_vector_from_json(j.at("b"), d),
                    complex_vector_from_json(j.at("h"), d),
                    {},
                    real_from_json(j.at("pivot_floor"), d),
                    std::nullopt};
  for (const auto& e : j.at("exists")) t.exists.push_back(e.get<bool>());
  if (!j.at("failed_degree").is_null()) t.failed_degree = j.at("failed_degree").get<int>();
  return t;
}

inline Json to_json(const QuadratureRule& r) {
  Json j;
  j["digits"] = r.omega.precision();
  j["n"] = r.n;
  j["omega"] = to_json(r.omega);
  j["nodes"] = to_json(r.nodes);
  j["weights"] = to_json(r.weights);
  return j;
}

inline QuadratureRule quadrature_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  return {j.at("n").get<int>(), real_from_json(j.at("omega"), d),
          complex_vector_from_json(j.at("nodes"), d), complex_vector_from_json(j.at("weights"), d)};
}

inline Json to_json(const SCurve& c) {
  Json j;
  j["digits"] = c.precision();
  j["lambda"] = to_json(c.lambda());
  j["step"] = to_json(c.step());
  j["points"] = to_json(c.points());
  j["tangents"] = to_json(c.tangents());
  j["mass"] = to_json(c.mass());
  return j;
}

inline SCurve scurve_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  return SCurve(real_from_json(j.at("lambda"), d), complex_vector_from_json(j.at("points"), d),
                complex_vector_from_json(j.at("tangents"), d),
                real_vector_from_json(j.at("mass"), d), real_from_json(j.at("step"), d));
}

inline Json to_json(const Trajectory& t) {
  Json j;
  j["digits"] = t.level.precision();
  j["origin"] = origin_name(t.origin);
  j["termination"] = termination_name(t.termination);
  j["level"] = to_json(t.level);
  j["real_crossing"] = t.real_crossing ? to_json(*t.real_crossing) : Json(nullptr);
  j["points"] = to_json(t.points);
  return j;
}

inline Trajectory trajectory_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  auto origin = [](const std::string& s) {
    for (auto o : {Trajectory::Origin::ENDPOINT_PLUS, Trajectory::Origin::ENDPOINT_MINUS,
                   Trajectory::Origin::Z_STAR, Trajectory::Origin::REGULAR}) {
      if (s == origin_name(o)) return o;
    }
    throw DomainError("unknown trajectory origin '" + s + "'");
  };
  auto term = [](const std::string& s) {
    for (auto t : {Trajectory::Termination::REACHED_POLE, Trajectory::Termination::LEFT_BOX,
                   Trajectory::Termination::CLOSED_LOOP,
                   Trajectory::Termination::CROSSED_REAL_AXIS}) {
      if (s == termination_name(t)) return t;
    }
    throw DomainError("unknown trajectory termination '" + s + "'");
  };
  Trajectory t{complex_vector_from_json(j.at("points"), d), origin(j.at("origin")),
               term(j.at("termination")), real_from_json(j.at("level"), d), std::nullopt};
  if (!j.at("real_crossing").is_null()) t.real_crossing = real_from_json(j.at("real_crossing"), d);
  return t;
}

inline Json to_json(const QDClassification& c) {
  Json j;
  j["digits"] = c.lambda.precision();
  j["lambda"] = to_json(c.lambda);
  j["regime"] = regime_name(c.regime);
  j["z_star"] = c.z_star ? to_json(*c.z_star) : Json(nullptr);
  j["im_xi_zstar"] = to_json(c.im_xi_zstar);
  return j;
}

inline QDClassification classification_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  std::string name = j.at("regime");
  Regime r = Regime::SINGLE_ARC;
  bool found = false;
  for (auto g : {Regime::SINGLE_ARC, Regime::CRITICAL, Regime::TWO_ARC}) {
    if (name == regime_name(g)) {
      r = g;
      found = true;
    }
  }
  if (!found) throw DomainError("unknown regime '" + name + "'");
  QDClassification c{real_from_json(j.at("lambda"), d), r, std::nullopt,
                     real_from_json(j.at("im_xi_zstar"), d)};
  if (!j.at("z_star").is_null()) c.z_star = complex_from_json(j.at("z_star"), d);
  return c;
}

inline Json to_json(const ZeroCurveReport& r) {
  Json j;
  j["digits"] = r.lambda.precision();
  j["n"] = r.n;
  j["lambda"] = to_json(r.lambda);
  j["max_dist"] = to_json(r.max_dist);
  j["mean_dist"] = to_json(r.mean_dist);
  j["zeros"] = to_json(r.zeros);
  j["distances"] = to_json(r.distances);
  j["parameters"] = to_json(r.parameters);
  return j;
}

inline ZeroCurveReport zero_curve_report_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  return {j.at("n").get<int>(),
          real_from_json(j.at("lambda"), d),
          real_from_json(j.at("max_dist"), d),
          real_from_json(j.at("mean_dist"), d),
          complex_vector_from_json(j.at("zeros"), d),
          real_vector_from_json(j.at("distances"), d),
          real_vector_from_json(j.at("parameters"), d)};
}

inline Json to_json(const CdfReport& r) {
  Json j;
  j["digits"] = r.lambda.precision();
  j["n"] = r.n;
  j["lambda"] = to_json(r.lambda);
  j["ks_stat"] = to_json(r.ks_stat);
  return j;
}

inline CdfReport cdf_report_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  return {j.at("n").get<int>(), real_from_json(j.at("lambda"), d),
          real_from_json(j.at("ks_stat"), d)};
}

namespace detail {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

inline Json optional_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace detail

inline Json to_json(const ConvergenceTable& t) {
  Json j;
  j["digits"] = t.lambda.precision();
  j["quantity"] = quantity_name(t.quantity);
  j["lambda"] = to_json(t.lambda);
  j["z"] = detail::optional_json(t.z);
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["n"] = r.n;
    row["computed"] = detail::optional_json(r.computed);
    row["predicted"] = detail::optional_json(r.predicted);
    row["abs_err"] = detail::optional_json(r.abs_err);
    row["rel_err"] = detail::optional_json(r.rel_err);
    row["failure"] = r.failure;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["fitted_order"] = detail::optional_double(t.fitted_order);
  j["fitted_order_rel"] = detail::optional_double(t.fitted_order_rel);
  return j;
}

inline ConvergenceTable convergence_table_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  auto oc = [d](const Json& e) -> std::optional<Complex> {
    if (e.is_null()) return std::nullopt;
    return complex_from_json(e, d);
  };
  auto orl = [d](const Json& e) -> std::optional<Real> {
    if (e.is_null()) return std::nullopt;
    return real_from_json(e, d);
  };
  auto od = [](const Json& e) -> std::optional<double> {
    if (e.is_null()) return std::nullopt;
    return e.get<double>();
  };
  ConvergenceTable t{parse_quantity(j.at("quantity")), real_from_json(j.at("lambda"), d),
                     oc(j.at("z")), {}, od(j.at("fitted_order")), od(j.at("fitted_order_rel"))};
  for (const auto& r : j.at("rows")) {
    t.rows.push_back({r.at("n").get<int>(), oc(r.at("computed")), oc(r.at("predicted")),
                      orl(r.at("abs_err")), orl(r.at("rel_err")),
                      r.at("failure").get<std::string>()});
  }
  return t;
}

/// One comparison of an asymptotic formula against the computed p_n(z).
struct PredictionRecord {
  Complex z;
  int n;
  Real lambda;
  FormulaId formula;
  Complex predicted;
  Complex computed;
  Real rel_err;
};

inline Json to_json(const PredictionRecord& r) {
  Json j;
  j["digits"] = r.lambda.precision();
  j["z"] = to_json(r.z);
  j["n"] = r.n;
  j["lambda"] = to_json(r.lambda);
  j["formula"] = formula_name(r.formula);
  j["predicted"] = to_json(r.predicted);
  j["computed"] = to_json(r.computed);
  j["rel_err"] = to_json(r.rel_err);
  return j;
}

inline PredictionRecord prediction_from_json(const Json& j) {
  unsigned d = j.at("digits").get<unsigned>();
  std::string name = j.at("formula");
  std::optional<FormulaId> f;
  for (auto g : {FormulaId::OUTER, FormulaId::INNER, FormulaId::ENDPOINT_P1,
                 FormulaId::ENDPOINT_M1}) {
    if (name == formula_name(g)) f = g;
  }
  if (!f) throw DomainError("unknown formula '" + name + "'");
  return {complex_from_json(j.at("z"), d),         j.at("n").get<int>(),
          real_from_json(j.at("lambda"), d),        *f,
          complex_from_json(j.at("predicted"), d), complex_from_json(j.at("computed"), d),
          real_from_json(j.at("rel_err"), d)};
}

// CSV.

/// Fixed-header CSV table of decimal strings.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : cols_(header.size()) { add(header); }

  void add(const std::vector<std::string>& row) {
    if (row.size() != cols_) throw DomainError("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out_ << ',';
      out_ << row[i];
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::size_t cols_;
  std::ostringstream out_;
};

/// Quotes a free-text field, doubling embedded quotes.
inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string csv_opt(const std::optional<Real>& x) { return x ? to_decimal(*x) : ""; }

inline std::string csv(const MomentTable& t) {
  Csv c({"k", "re", "im"});
  for (std::size_t k = 0; k < t.m.size(); ++k) {
    c.add({std::to_string(k), to_decimal(t.m[k].re()), to_decimal(t.m[k].im())});
  }
  return c.str();
}

inline std::string csv(const RecurrenceTable& t) {
  Csv c({"k", "a_sq_re", "a_sq_im", "b_re", "b_im", "h_re", "h_im", "exists"});
  for (int k = 0; k <= t.n; ++k) {
    bool hb = k < static_cast<int>(t.b.size());
    c.add({std::to_string(k), to_decimal(t.a_sq[k].re()), to_decimal(t.a_sq[k].im()),
           hb ? to_decimal(t.b[k].re()) : "", hb ? to_decimal(t.b[k].im()) : "",
           to_decimal(t.h[k].re()), to_decimal(t.h[k].im()), t.exists[k] ? "1" : "0"});
  }
  return c.str();
}

inline std::string csv(const QuadratureRule& r) {
  Csv c({"index", "node_re", "node_im", "weight_re", "weight_im"});
  for (int j = 0; j < r.n; ++j) {
    c.add({std::to_string(j), to_decimal(r.nodes[j].re()), to_decimal(r.nodes[j].im()),
           to_decimal(r.weights[j].re()), to_decimal(r.weights[j].im())});
  }
  return c.str();
}

inline std::string csv(const SCurve& curve) {
  Csv c({"s", "re", "im", "mass"});
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::ostringstream s;
    s.precision(17);
    s << curve.arclength()[i];
    c.add({s.str(), to_decimal(curve.points()[i].re()), to_decimal(curve.points()[i].im()),
           to_decimal(curve.mass()[i])});
  }
  return c.str();
}

inline std::string csv(const std::vector<Trajectory>& ts) {
  Csv c({"trajectory", "origin", "termination", "index", "re", "im"});
  for (std::size_t t = 0; t < ts.size(); ++t) {
    for (std::size_t i = 0; i < ts[t].points.size(); ++i) {
      c.add({std::to_string(t), origin_name(ts[t].origin), termination_name(ts[t].termination),
             std::to_string(i), to_decimal(ts[t].points[i].re()),
             to_decimal(ts[t].points[i].im())});
    }
  }
  return c.str();
}

inline std::string csv(const QDClassification& q) {
  Csv c({"lambda", "regime", "z_star_re", "z_star_im", "im_xi_zstar"});
  c.add({to_decimal(q.lambda), regime_name(q.regime), q.z_star ? to_decimal(q.z_star->re()) : "",
         q.z_star ? to_decimal(q.z_star->im()) : "", to_decimal(q.im_xi_zstar)});
  return c.str();
}

inline std::string csv(const ZeroCurveReport& r) {
  Csv c({"index", "re", "im", "distance", "mass"});
  for (std::size_t j = 0; j < r.zeros.size(); ++j) {
    c.add({std::to_string(j), to_decimal(r.zeros[j].re()), to_decimal(r.zeros[j].im()),
           to_decimal(r.distances[j]), to_decimal(r.parameters[j])});
  }
  return c.str();
}

inline std::string csv(const CdfReport& r) {
  Csv c({"n", "lambda", "ks_stat"});
  c.add({std::to_string(r.n), to_decimal(r.lambda), to_decimal(r.ks_stat)});
  return c.str();
}

inline std::string csv(const ConvergenceTable& t) {
  Csv c({"quantity", "n", "computed_re", "computed_im", "predicted_re", "predicted_im", "abs_err",
         "rel_err", "failure"});
  for (const auto& r : t.rows) {
    c.add({quantity_name(t.quantity), std::to_string(r.n),
           r.computed ? to_decimal(r.computed->re()) : "",
           r.computed ? to_decimal(r.computed->im()) : "",
           r.predicted ? to_decimal(r.predicted->re()) : "",
           r.predicted ? to_decimal(r.predicted->im()) : "", csv_opt(r.abs_err),
           csv_opt(r.rel_err), r.failure.empty() ? "" : csv_quote(r.failure)});
  }
  return c.str();
}

inline std::string csv(const std::vector<PredictionRecord>& rs) {
  Csv c({"z_re", "z_im", "n", "lambda", "formula", "predicted_re", "predicted_im", "computed_re",
         "computed_im", "rel_err"});
  for (const auto& r : rs) {
    c.add({to_decimal(r.z.re()), to_decimal(r.z.im()), std::to_string(r.n), to_decimal(r.lambda),
           formula_name(r.formula), to_decimal(r.predicted.re()), to_decimal(r.predicted.im()),
           to_decimal(r.computed.re()), to_decimal(r.computed.im()), to_decimal(r.rel_err)});
  }
  return c.str();
}

// Files.

/// Writes `content` to `path` through a temporary file in the same directory
/// and a rename, so readers never observe a partial artifact.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw DomainError("cannot open '" + tmp.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw DomainError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

inline Json read_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open '" + path.string() + "'");
  return Json::parse(f);
}

}  // namespace oscgauss

#endif  // OSCGAUSS_IO_HPP
