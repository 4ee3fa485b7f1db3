#include "support.hpp"

using namespace oscgauss;
using namespace oscgauss::testing;

namespace {

SCurve traced(const char* lambda, const PrecisionContext& ctx, const char* step = "0.001") {
  return trace_scurve(ctx.real(lambda), ctx.real(step), ctx.real(kDefaultCurveTol), ctx);
}

/// p_n(z) through the recurrence at omega = lambda n.
Complex exact_pn(const Complex& z, int n, const Real& lambda, const PrecisionContext& ctx) {
  RecurrenceTable rec = recurrence(n, lambda * n, ctx);
  PrecisionContext w(rec.digits(), ctx.guard());
  return round_to(eval_poly(rec, n, round_to(z, w)), ctx);
}

double rel(const Complex& got, const Complex& want) { return to_double(dist(got, want) / abs(want)); }

/// (1 / 2 pi i) int_{|z - c| = r} f(z) dz by the trapezoidal rule with m nodes.
Matrix2 residue(const std::function<Matrix2(const Complex&)>& f, const Complex& c, const Real& r, int m,
                const PrecisionContext& ctx) {
  Matrix2 sum = Matrix2::zero(ctx);
  for (const Complex& z : circle(c, r, m, ctx)) sum += f(z) * (z - c);
  return sum * Complex(ctx.one() / m);
}

}  // namespace

TEST(Matrix2, InverseAndDeterminant) {
  PrecisionContext ctx(40);
  Matrix2 a(C("1", "2", ctx), C("0", "-1", ctx), C("3", "0", ctx), C("0.5", "0.5", ctx));
  Matrix2 p = a * a.inverse();
  EXPECT_LT(to_double(max_dist(p, Matrix2::identity(ctx))), 1e-38);
  EXPECT_LT(gap((a * a).det(), a.det() * a.det()), 1e-36);
  EXPECT_EQ(a(2, 1), C("3", "0", ctx));
  EXPECT_THROW(Matrix2::zero(ctx).inverse(), DomainError);
}

TEST(Regions, GuardsPartitionThePlane) {
  PrecisionContext ctx(40);
  SCurve curve = traced("0.5", ctx, "0.01");
  for (int i = -15; i <= 15; ++i) {
    for (int j = -6; j <= 10; ++j) {
      Complex z = Complex::from(ctx, 0.1 * i + 0.003, 0.05 * j + 0.001);
      int hits = endpoint_guard(z, 1) + endpoint_guard(z, -1) + outer_guard(z, curve) + inner_guard(z, curve);
      EXPECT_EQ(hits, 1) << to_cdouble(z);
      FormulaId f = governing_formula(z, curve);
      EXPECT_NO_THROW(predict(f, z, 10, ctx.real("0.5"), curve, ctx)) << to_cdouble(z);
    }
  }
}

TEST(Regions, FormulasRefuseForeignRegions) {
  PrecisionContext ctx(40);
  SCurve curve = traced("0.5", ctx, "0.01");
  Real lam = ctx.real("0.5");
  EXPECT_THROW(outer_pn(C("0", "0.3", ctx), 10, lam, curve, ctx), RegionViolation);
  EXPECT_THROW(inner_pn(C("2", "1", ctx), 10, lam, curve, ctx), RegionViolation);
  EXPECT_THROW(inner_pn(C("1", "0.02", ctx), 10, lam, curve, ctx), RegionViolation);
  EXPECT_THROW(endpoint_pn(C("0", "0.3", ctx), 10, lam, curve, 1, ctx), RegionViolation);
  EXPECT_THROW(endpoint_pn(C("1", "0.02", ctx), 10, lam, curve, 2, ctx), DomainError);
}

TEST(Formulas, ApproachComputedPolynomials) {
  PrecisionContext ctx(50);
  for (const char* l : {"0", "0.5"}) {
    Real lam = ctx.real(l);
    SCurve curve = traced(l, ctx);
    Complex zi = lam == 0 ? C("0.3", "0.05", ctx) : C("0", "0.3", ctx);
    struct Case {
      FormulaId f;
      Complex z;
    };
    for (const Case& c : {Case{FormulaId::OUTER, C("2", "1", ctx)}, Case{FormulaId::INNER, zi},
                          Case{FormulaId::ENDPOINT_P1, C("1", "0.02", ctx)},
                          Case{FormulaId::ENDPOINT_M1, C("-1", "0.02", ctx)}}) {
      double e20 = rel(predict(c.f, c.z, 20, lam, curve, ctx).value, exact_pn(c.z, 20, lam, ctx));
      double e40 = rel(predict(c.f, c.z, 40, lam, curve, ctx).value, exact_pn(c.z, 40, lam, ctx));
      EXPECT_LT(e40, 0.05) << formula_name(c.f) << " lambda " << l;
      double ratio = e20 / e40;
      EXPECT_GE(ratio, 1.5) << formula_name(c.f) << " lambda " << l;
      EXPECT_LE(ratio, 3.0) << formula_name(c.f) << " lambda " << l;
    }
  }
}

TEST(Formulas, RatesAtLambdaOne) {
  PrecisionContext ctx(50);
  Real lam = ctx.one();
  SCurve curve = traced("1", ctx);
  for (Quantity q : {Quantity::OUTER, Quantity::INNER, Quantity::ENDPOINT}) {
    Complex z = default_test_point(q, curve, ctx);
    ConvergenceTable t = convergence_table(q, {20, 40, 80}, lam, ctx, z);
    for (int i = 0; i < 2; ++i) {
      double ratio = to_double(*t.rows[i].rel_err / *t.rows[i + 1].rel_err);
      EXPECT_GE(ratio, 1.5) << quantity_name(q) << " row " << i;
      EXPECT_LE(ratio, 3.0) << quantity_name(q) << " row " << i;
    }
  }
}

TEST(Formulas, EndpointMatchesMehlerHeineForLegendre) {
  // P_n(cos(x/n)) -> J0(x); with the monic normalisation 2^n n!^2 / (2n)!.
  PrecisionContext ctx(50);
  SCurve curve = traced("0", ctx);
  int n = 60;
  Complex z(boost::multiprecision::cos(ctx.real(2) / n), ctx.real("1e-3"));
  Complex got = endpoint_pn(z, n, ctx.zero(), curve, 1, ctx);
  EXPECT_LT(rel(got, exact_pn(z, n, ctx.zero(), ctx)), 0.02);
}

TEST(Formulas, EndpointConformalMapIsLocallyLinear) {
  PrecisionContext ctx(50);
  Real lam = ctx.real("0.5");
  SCurve curve = traced("0.5", ctx, "0.01");
  Complex z = C("1", "1e-12", ctx);
  Complex slope = endpoint_conformal_f(z, lam, curve, ctx) / (z - 1L);
  Complex want = (Complex(ctx.real(2), lam) * Complex(ctx.real(2), lam)) / 8L;
  EXPECT_LT(rel(slope, want), 1e-10);
}

TEST(RecurrenceAsymptotics, LegendreCorrection) {
  PrecisionContext ctx(50);
  for (int n : {10, 80}) {
    Real exact = ctx.real(n) * n / (ctx.real(4) * n * n - 1);
    auto [a, b] = recurrence_asymptotics(n, ctx.zero(), ctx);
    Real c_exact = exact - ctx.real(1) / 4;
    Real c_pred = a.re() - ctx.real(1) / 4;
    EXPECT_LT(to_double(boost::multiprecision::abs(c_pred / c_exact - 1)), 1.0 / (n * n)) << n;
    EXPECT_EQ(b.im(), 0);
  }
}

TEST(NMatrix, UnitDeterminantAndIdentityAtInfinity) {
  PrecisionContext ctx(50);
  SCurve curve = traced("0.5", ctx, "0.01");
  Real lam = ctx.real("0.5");
  for (auto z : {C("2", "1", ctx), C("0", "0.1", ctx), C("-0.5", "-0.3", ctx)}) {
    EXPECT_LT(to_double(abs(N_matrix(z, lam, curve, ctx).det() - 1L)), 1e-45);
  }
  Matrix2 far = N_matrix(C("1e8", "1e8", ctx), lam, curve, ctx);
  EXPECT_LT(to_double(max_dist(far, Matrix2::identity(ctx))), 1e-7);
}

TEST(NMatrix, JumpAcrossTheCurve) {
  // N_+ = N_- [[0, 1], [-1, 0]] on the curve.
  PrecisionContext ctx(50);
  SCurve curve = traced("0.5", ctx, "0.01");
  Real lam = ctx.real("0.5");
  const Complex& z = curve.points()[curve.size() / 3];
  Complex n = times_i(curve.tangents()[curve.size() / 3]);
  Real eps = ctx.pow10(-30);
  Matrix2 plus = N_matrix(z + n * eps, lam, curve, ctx);
  Matrix2 minus = N_matrix(z - n * eps, lam, curve, ctx);
  Matrix2 J(Complex::zero(ctx), Complex::one(ctx), -Complex::one(ctx), Complex::zero(ctx));
  EXPECT_LT(to_double(max_dist(plus, minus * J)), 1e-12);
}

TEST(DeltaK, ResiduesMatchPoleCoefficients) {
  PrecisionContext ctx(50);
  for (const char* l : {"0", "0.5"}) {
    Real lam = ctx.real(l);
    SCurve curve = traced(l, ctx, "0.01");
    RExpansion R = R_expansion(lam, ctx);
    Real r = ctx.real("0.05");
    auto d1 = [&](int e) {
      return [&, e](const Complex& z) { return delta_k(z, 1, lam, curve, e, ctx); };
    };
    Matrix2 ra = residue(d1(1), Complex::one(ctx), r, 128, ctx);
    Matrix2 rb = residue(d1(-1), -Complex::one(ctx), r, 128, ctx);
    EXPECT_LT(to_double(max_dist(ra, R.A1)), 1e-30) << l;
    EXPECT_LT(to_double(max_dist(rb, R.B1)), 1e-30) << l;
  }
}

TEST(DeltaK, CoreMatrixDiagonals) {
  PrecisionContext ctx(40);
  Matrix2 m1 = detail::delta_core(1, 1, ctx);
  Matrix2 m2 = detail::delta_core(2, 1, ctx);
  EXPECT_EQ(m1(1, 1), Complex(ctx.real(-1) / 4));
  EXPECT_EQ(m1(2, 2), Complex(ctx.real(1) / 4));
  EXPECT_EQ(m2(1, 1), Complex(ctx.real(3) / 8));
  EXPECT_EQ(m2(2, 2), Complex(ctx.real(3) / 8));
  EXPECT_EQ(detail::delta_scale(1, ctx), 1);
  EXPECT_EQ(detail::delta_scale(2, ctx), ctx.real(-1) / 4);
}

TEST(DeltaK, PuncturedDiscOnly) {
  PrecisionContext ctx(40);
  SCurve curve = traced("0.5", ctx, "0.01");
  Real lam = ctx.real("0.5");
  EXPECT_THROW(delta_k(Complex::one(ctx), 1, lam, curve, 1, ctx), RegionViolation);
  EXPECT_THROW(delta_k(C("1.5", "0", ctx), 1, lam, curve, 1, ctx), RegionViolation);
  EXPECT_THROW(delta_k(C("1.05", "0", ctx), 0, lam, curve, 1, ctx), DomainError);
  EXPECT_NO_THROW(delta_k(C("1.05", "0.01", ctx), 2, lam, curve, 1, ctx));
}

TEST(RExpansion, RecurrenceAgreesToThirdOrder) {
  PrecisionContext ctx(50);
  for (const char* l : {"0", "0.5", "1"}) {
    Real lam = ctx.real(l);
    std::vector<int> ns{50, 100, 200};
    std::vector<double> ea, eb;
    for (int n : ns) {
      auto [ra, rb] = recurrence_from_R(lam, n, ctx);
      auto [pa, pb] = recurrence_asymptotics(n, lam, ctx);
      ea.push_back(gap(ra, pa));
      eb.push_back(gap(rb, pb));
    }
    auto oa = fit_order(ns, ea);
    ASSERT_TRUE(oa.has_value()) << l;
    EXPECT_GE(*oa, 2.8) << l;
    if (lam > 0) {
      auto ob = fit_order(ns, eb);
      ASSERT_TRUE(ob.has_value()) << l;
      EXPECT_GE(*ob, 2.8) << l;
    }
  }
}

TEST(MuMoments, MatchCurveQuadrature) {
  PrecisionContext ctx(50);
  for (const char* l : {"0", "0.5"}) {
    Real lam = ctx.real(l);
    SCurve curve = traced(l, ctx);
    auto [c1, c2] = mu_moments(lam, ctx);
    Complex m1 = curve_integral(curve, [](const Complex& s) { return s; }, ctx);
    Complex m2 = curve_integral(curve, [](const Complex& s) { return s * s; }, ctx);
    EXPECT_LT(gap(m1, c1), 1e-10) << l;
    EXPECT_LT(gap(m2, c2 * 2L), 1e-10) << l;
  }
}

TEST(Szego, BoundaryProductIsTheWeight) {
  PrecisionContext ctx(50);
  for (int om : {1, 10}) {
    Real omega = ctx.real(om);
    for (int j = 0; j < 20; ++j) {
      Real x = ctx.real(2 * j + 1) / 20 - 1;
      Complex prod = szego_D_limit(x, Side::PLUS, omega, ctx) * szego_D_limit(x, Side::MINUS, omega, ctx);
      EXPECT_LT(gap(prod, weight_W(Complex(x), omega, ctx)), 1e-30) << om << " " << j;
    }
  }
}

TEST(Szego, TendsToOneAtInfinity) {
  PrecisionContext ctx(50);
  Complex z = C("-3e9", "4e9", ctx);
  EXPECT_LT(to_double(abs(szego_D(z, ctx.real(10), ctx) - 1L)), 1e-8);
}

TEST(PhaseFunction, IsHalfNLambdaTimesRoot) {
  PrecisionContext ctx(40);
  SCurve curve = traced("0.5", ctx, "0.01");
  Complex z = C("2", "1", ctx);
  Complex s = sqrt_zsq_minus_one(z, BranchMode::SCURVE, &curve, ctx);
  EXPECT_LT(gap(remark_phase(z, 10, ctx.real("0.5"), curve, ctx), s * ctx.real("2.5")), 1e-38);
}
