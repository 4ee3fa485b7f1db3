#include "support.hpp"

using namespace oscgauss;
using namespace oscgauss::testing;

namespace {

/// Bilinear form <f, g> = int f g e^{i omega x} dx by a high-order Gauss-Legendre rule.
struct DiscreteForm {
  std::vector<Real> x;
  std::vector<Complex> w;

  DiscreteForm(const Real& omega, int order, const PrecisionContext& ctx) {
    GaussLegendre gl = gauss_legendre(order, ctx);
    for (int j = 0; j < order; ++j) {
      x.push_back(gl.nodes[j]);
      w.push_back(polar(gl.weights[j], omega * gl.nodes[j]));
    }
  }
};

/// Stieltjes procedure on the discretized form: an oracle for the recurrence
/// that never touches the moment matrix.
void stieltjes(const DiscreteForm& f, int n, const PrecisionContext& ctx, std::vector<Complex>& a_sq,
               std::vector<Complex>& b) {
  std::size_t m = f.x.size();
  std::vector<Complex> prev(m, Complex::zero(ctx)), cur(m, Complex::one(ctx));
  Complex h_prev = Complex::one(ctx);
  a_sq.assign(n + 1, Complex::zero(ctx));
  b.assign(n, Complex::zero(ctx));
  for (int k = 0; k < n; ++k) {
    Complex h = Complex::zero(ctx), xh = Complex::zero(ctx);
    for (std::size_t j = 0; j < m; ++j) {
      Complex t = f.w[j] * cur[j] * cur[j];
      h += t;
      xh += t * f.x[j];
    }
    if (k > 0) a_sq[k] = h / h_prev;
    b[k] = xh / h;
    std::vector<Complex> next(m, Complex::zero(ctx));
    for (std::size_t j = 0; j < m; ++j) {
      next[j] = (Complex(f.x[j]) - b[k]) * cur[j] - (k > 0 ? a_sq[k] * prev[j] : Complex::zero(ctx));
    }
    prev = std::move(cur);
    cur = std::move(next);
    h_prev = h;
  }
}

}  // namespace

TEST(Moments, MatchReferenceValuesAtOmegaTen) {
  PrecisionContext ctx(50);
  MomentTable mom = moments(ctx.real(10), 3, ctx);
  EXPECT_LT(gap(mom.m[0], C("-0.108804222177873962680949532370275456336728602583244778314837", "0", ctx)), 1e-48);
  EXPECT_LT(gap(mom.m[1], C("0", "0.156933883597503094183677836327785421270313172768309231535707", ctx)), 1e-48);
  EXPECT_LT(gap(mom.m[2], C("-0.140190998897374581517685099635832540590791237136906624621978", "0", ctx)), 1e-48);
  EXPECT_LT(gap(mom.m[3], C("0", "0.125757006146078115996467259674063204726748661885561721980597", ctx)), 1e-48);
}

TEST(Moments, ParityStructureIsExact) {
  PrecisionContext ctx(40);
  MomentTable mom = moments(ctx.real("7.3"), 25, ctx);
  for (int k = 0; k <= 25; ++k) {
    if (k % 2 == 0) {
      EXPECT_EQ(mom.m[k].im(), 0) << k;
    } else {
      EXPECT_EQ(mom.m[k].re(), 0) << k;
    }
  }
}

TEST(Moments, ZeroFrequencyIsPolynomialIntegral) {
  PrecisionContext ctx(40);
  MomentTable mom = moments(ctx.zero(), 10, ctx);
  for (int k = 0; k <= 10; ++k) {
    Real want = k % 2 ? ctx.zero() : Real(ctx.real(2) / (k + 1));
    EXPECT_LT(gap(mom.m[k], Complex(want)), 1e-38);
  }
}

TEST(Moments, RejectsNegativeInputs) {
  PrecisionContext ctx(40);
  EXPECT_THROW(moments(ctx.real(-1), 3, ctx), DomainError);
  EXPECT_THROW(moments(ctx.real(1), -1, ctx), DomainError);
}

TEST(Recurrence, LegendreAtZeroFrequency) {
  PrecisionContext ctx(50);
  RecurrenceTable rec = recurrence(30, ctx.zero(), ctx);
  for (int k = 1; k <= 30; ++k) {
    Real want = ctx.real(k * k) / (4 * k * k - 1);
    EXPECT_LT(gap(rec.a_sq[k], Complex(want)), 1e-40) << k;
  }
  for (int k = 0; k < 30; ++k) EXPECT_LT(to_double(abs(rec.b[k])), 1e-40) << k;
}

TEST(Recurrence, AgreesWithDiscretizedStieltjes) {
  PrecisionContext ctx(60);
  for (const char* om : {"3", "10", "25.5"}) {
    Real omega = ctx.real(om);
    int n = 10;
    RecurrenceTable rec = recurrence(n, omega, ctx);
    std::vector<Complex> a_sq, b;
    stieltjes(DiscreteForm(omega, 120, ctx), n, ctx, a_sq, b);
    for (int k = 1; k < n; ++k) {
      EXPECT_LT(to_double(dist(rec.a_sq[k], a_sq[k]) / abs(a_sq[k])), 1e-35) << om << " a_sq " << k;
    }
    for (int k = 0; k < n; ++k) {
      EXPECT_LT(gap(rec.b[k], b[k]), 1e-35 * (1 + to_double(abs(b[k])))) << om << " b " << k;
    }
  }
}

TEST(Recurrence, SymmetryMakesBImaginaryAndASqReal) {
  PrecisionContext ctx(50);
  RecurrenceTable rec = recurrence(20, ctx.real(15), ctx);
  for (int k = 1; k <= 20; ++k) EXPECT_LT(to_double(boost::multiprecision::abs(rec.a_sq[k].im())), 1e-40);
  for (int k = 0; k < 20; ++k) EXPECT_LT(to_double(boost::multiprecision::abs(rec.b[k].re())), 1e-40);
}

TEST(Recurrence, MissingDegreeIsReported) {
  PrecisionContext ctx(50);
  // m0 = 2 sin(omega) / omega vanishes at omega = pi, so p_1 does not exist.
  MomentTable mom = moments(ctx.pi(), 6, ctx);
  RecurrenceTable rec = try_recurrence_from_moments(mom, 3, ctx);
  ASSERT_TRUE(rec.failed_degree.has_value());
  EXPECT_EQ(*rec.failed_degree, 1);
  EXPECT_TRUE(rec.exists[0]);
  EXPECT_FALSE(rec.exists[1]);
  EXPECT_EQ(rec.max_degree(), 0);
  try {
    recurrence_from_moments(mom, 3, ctx);
    FAIL() << "expected ExistenceFailure";
  } catch (const ExistenceFailure& e) {
    EXPECT_EQ(e.degree(), 1);
    EXPECT_LT(e.pivot(), 1e-20);
  }
}

TEST(Recurrence, PolicyRaisesDigitsWithDegree) {
  PrecisionContext ctx(50);
  EXPECT_EQ(policy_digits(5, ctx), 50u);
  EXPECT_EQ(policy_digits(40, ctx), 120u);
  RecurrenceTable rec = recurrence(40, ctx.real(20), ctx);
  EXPECT_GE(rec.digits(), 120u);
}

TEST(Recurrence, OrthogonalityDefectIsSmall) {
  PrecisionContext ctx(50);
  RecurrenceTable rec = recurrence(25, ctx.real(12), ctx);
  PrecisionContext w = ctx.with_digits(rec.digits());
  MomentTable mom = moments(w.real(12), 60, w);
  EXPECT_LT(to_double(orthogonality_residual(rec, mom, 25)), 1e-40);
}

TEST(EvalPoly, RecurrenceMatchesMonomialForm) {
  PrecisionContext ctx(50);
  RecurrenceTable rec = recurrence(12, ctx.real(8), ctx);
  MonicPolynomial p = monic_coefficients(rec, 12);
  EXPECT_EQ(p.degree(), 12);
  EXPECT_EQ(p.coeffs.back(), Complex::one(ctx));
  Complex z = C("0.3", "-0.4", ctx);
  auto [v, dv] = detail::horner(p.coeffs, z);
  PolyValue pv = eval_poly_with_derivative(rec, 12, z);
  EXPECT_LT(to_double(dist(eval_poly(rec, 12, z), v) / abs(v)), 1e-40);
  EXPECT_LT(to_double(dist(pv.p, v) / abs(v)), 1e-40);
  EXPECT_LT(to_double(dist(pv.dp, dv) / abs(dv)), 1e-40);
  EXPECT_LT(to_double(dist(pv.p_prev, eval_poly(rec, 11, z))), 1e-40);
}

TEST(Zeros, LegendreZerosAreGaussLegendreNodes) {
  PrecisionContext ctx(50);
  for (int n : {5, 16}) {
    RecurrenceTable rec = recurrence(n, ctx.zero(), ctx);
    std::vector<Complex> z = zeros(rec, n, ctx);
    GaussLegendre gl = gauss_legendre(n, ctx);
    ASSERT_EQ(z.size(), static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) EXPECT_LT(gap(z[j], Complex(gl.nodes[j])), 1e-40) << n << " " << j;
  }
}

TEST(Zeros, AreRootsAndSymmetric) {
  PrecisionContext ctx(50);
  int n = 20;
  RecurrenceTable rec = recurrence(n, ctx.real(10), ctx);
  std::vector<Complex> z = zeros(rec, n, ctx);
  ASSERT_EQ(z.size(), static_cast<std::size_t>(n));
  for (const auto& x : z) {
    Real scale = ctx.one();
    for (int k = 0; k < n; ++k) scale *= 1 + abs(x);
    EXPECT_LT(to_double(abs(eval_poly(rec, n, x)) / scale), 1e-35);
    // The zero set is invariant under z -> -conj(z).
    Real best = ctx.real(10);
    for (const auto& y : z) best = std::min(best, dist(y, -conj(x)));
    EXPECT_LT(to_double(best), 1e-35);
  }
  EXPECT_TRUE(std::is_sorted(z.begin(), z.end(), detail::zero_order));
}

TEST(Quadrature, ExactOnMonomials) {
  PrecisionContext ctx(50);
  for (auto [n, om] : {std::pair{5, "10"}, std::pair{8, "3.5"}}) {
    RecurrenceTable rec = recurrence(n, ctx.real(om), ctx);
    QuadratureRule rule = quadrature_rule(rec, n, ctx);
    MomentTable mom = moments(ctx.real(om), 2 * n - 1, ctx);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      Complex q = integrate(rule, [&](const Complex& x) { return pow(x, static_cast<long>(k)); });
      EXPECT_LT(gap(q, mom.m[k]), 1e-35) << "n " << n << " k " << k;
    }
  }
}

TEST(Quadrature, ZeroFrequencyIsGaussLegendre) {
  PrecisionContext ctx(50);
  QuadratureRule rule = quadrature_rule(recurrence(7, ctx.zero(), ctx), 7, ctx);
  GaussLegendre gl = gauss_legendre(7, ctx);
  for (int j = 0; j < 7; ++j) {
    EXPECT_LT(gap(rule.nodes[j], Complex(gl.nodes[j])), 1e-40);
    EXPECT_LT(gap(rule.weights[j], Complex(gl.weights[j])), 1e-40);
  }
}

TEST(OracleIntegrate, ExponentialClosedForm) {
  PrecisionContext ctx(40);
  Real omega = ctx.real(50);
  Complex a(ctx.one(), omega);  // 1 + i omega
  Complex want = (exp(a) - exp(-a)) / a;
  Complex got = oracle_integrate([](const Complex& x) { return exp(x); }, omega, ctx);
  EXPECT_LT(to_double(dist(got, want) / abs(want)), 1e-33);
}

TEST(Integrate, GaussRuleConvergesForEntireIntegrand) {
  PrecisionContext ctx(50);
  Real omega = ctx.real(50);
  Complex a(ctx.one(), omega);
  Complex want = (exp(a) - exp(-a)) / a;
  QuadratureRule rule = quadrature_rule(recurrence(10, omega, ctx), 10, ctx);
  Complex got = integrate(rule, [](const Complex& x) { return exp(x); });
  EXPECT_LT(to_double(dist(got, want) / abs(want)), 1e-8);
}

TEST(ProblemParams, LambdaAndOmegaAgree) {
  PrecisionContext ctx(40);
  ProblemParams p = ProblemParams::from_omega(20, ctx.real(10), ctx);
  EXPECT_EQ(p.lambda, ctx.real(10) / 20);
  ProblemParams q = ProblemParams::from_lambda(20, ctx.real("0.5"), ctx);
  EXPECT_EQ(q.omega, ctx.real(10));
  EXPECT_THROW(ProblemParams::from_omega(0, ctx.real(1), ctx), DomainError);
  EXPECT_THROW(ProblemParams::from_lambda(3, ctx.real(-1), ctx), DomainError);
}

TEST(Recurrence, NormsAreProductsOfASq) {
  PrecisionContext ctx(50);
  RecurrenceTable rec = recurrence(15, ctx.real(9), ctx);
  Complex prod = rec.h[0];
  for (int k = 1; k <= 15; ++k) {
    prod *= rec.a_sq[k];
    EXPECT_LT(to_double(dist(prod, rec.h[k]) / abs(rec.h[k])), 1e-40) << k;
  }
}

TEST(Recurrence, DefectBelowPolicyThresholdAtFortyAndZeroForConstant) {
  PrecisionContext ctx(50);
  RecurrenceTable rec = recurrence(40, ctx.real(20), ctx);
  PrecisionContext w(rec.digits(), ctx.guard());
  MomentTable mom = moments(w.real(20), 81, w);
  EXPECT_LT(orthogonality_residual(rec, mom, 40), w.pow10(-static_cast<int>(rec.digits()) / 3));
  EXPECT_EQ(orthogonality_residual(rec, mom, 0), 0);
}
