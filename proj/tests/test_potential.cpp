#include "support.hpp"

#include <cmath>

using namespace oscgauss;
using namespace oscgauss::testing;

namespace {

const char* kLambda0 = "1.32548683869836316194948419421850581411246709823004483504079";

SCurve traced(const char* lambda, const PrecisionContext& ctx, const char* step = "0.01") {
  return trace_scurve(ctx.real(lambda), ctx.real(step), ctx.real(kDefaultCurveTol), ctx);
}

std::vector<Trajectory> from_zstar(const Real& lam, const PrecisionContext& ctx) {
  std::vector<Trajectory> out;
  for (const Real& a : zstar_launch_angles(lam, ctx)) {
    out.push_back(trace_trajectory(z_star(lam, ctx), lam, polar(ctx.one(), a), ctx.real("0.005"), ctx));
  }
  return out;
}

}  // namespace

TEST(Lambda0, MatchesReferenceAndSolvesH) {
  PrecisionContext ctx(50);
  Real l0 = solve_lambda0(ctx);
  EXPECT_LT(gap(l0, ctx.real(kLambda0)), 1e-45);
  EXPECT_LT(to_double(boost::multiprecision::abs(h_of_lambda(l0, ctx))), 1e-40);
}

TEST(HOfLambda, AgreesWithInverseSinhForm) {
  PrecisionContext ctx(30);
  for (double l : {0.1, 0.8, 1.0, 2.5, 7.0}) {
    double want = 2 * std::asinh(2 / l) - std::sqrt(l * l + 4);
    EXPECT_NEAR(to_double(h_of_lambda(ctx.real(l), ctx)), want, 1e-13) << l;
  }
  EXPECT_THROW(h_of_lambda(ctx.zero(), ctx), DomainError);
}

TEST(HOfLambda, DerivativeMatchesFiniteDifference) {
  PrecisionContext ctx(40);
  Real l = ctx.real("0.9"), e = ctx.pow10(-12);
  Real fd = (h_of_lambda(l + e, ctx) - h_of_lambda(l - e, ctx)) / (2 * e);
  EXPECT_LT(gap(fd, h_prime(l, ctx)), 1e-20);
}

TEST(Classify, ThreeRegimes) {
  PrecisionContext ctx(50);
  EXPECT_EQ(classify(ctx.zero(), ctx).regime, Regime::SINGLE_ARC);
  EXPECT_FALSE(classify(ctx.zero(), ctx).z_star.has_value());
  EXPECT_EQ(classify(ctx.real("0.5"), ctx).regime, Regime::SINGLE_ARC);
  EXPECT_EQ(classify(ctx.real("1.5"), ctx).regime, Regime::TWO_ARC);
  QDClassification c = classify(solve_lambda0(ctx), ctx);
  EXPECT_EQ(c.regime, Regime::CRITICAL);
  EXPECT_LT(gap(*c.z_star, Complex(ctx.zero(), 2 / solve_lambda0(ctx))), 1e-45);
  EXPECT_THROW(classify(ctx.real(-1), ctx), DomainError);
}

TEST(QLambda, DoubleZeroAtZStar) {
  PrecisionContext ctx(40);
  Real lam = ctx.real("0.7");
  Complex zs = z_star(lam, ctx);
  EXPECT_LT(to_double(abs(Q_lambda(zs, lam, ctx))), 1e-38);
  Complex e = C("1e-10", "0", ctx);
  // Q(z* + e) = O(e^2).
  EXPECT_LT(to_double(abs(Q_lambda(zs + e, lam, ctx))), 1e-18);
  EXPECT_THROW(Q_lambda(Complex::one(ctx), lam, ctx), PoleAt);
}

TEST(Phi, DerivativeAndXiRelations) {
  PrecisionContext ctx(50);
  Real lam = ctx.real("0.5");
  Complex z = C("2", "1", ctx);
  Complex p = phi(z, lam, BranchMode::PRINCIPAL, nullptr, ctx);
  EXPECT_LT(gap(p, C("2.38281051848494937451964058682572598288454889967253928417818",
                     "1.91416632640822276221427318091252869765725707393190311993995", ctx)),
            1e-45);
  EXPECT_LT(gap(varphi(z, BranchMode::PRINCIPAL, nullptr, ctx),
                C("3.79890743994786727226122758362425563832754498362521387059541",
                  "2.1117859405028423439840960957951385013821156299940741231553", ctx)),
            1e-45);
  EXPECT_LT(gap(xi(z, lam, BranchMode::PRINCIPAL, nullptr, ctx), times_i(p) / 2L), 1e-45);
  Complex e = C("1e-15", "0", ctx);
  Complex fd = (phi(z + e, lam, BranchMode::PRINCIPAL, nullptr, ctx) -
                phi(z - e, lam, BranchMode::PRINCIPAL, nullptr, ctx)) / (e * 2L);
  EXPECT_LT(gap(fd, phi_prime(z, lam, BranchMode::PRINCIPAL, nullptr, ctx)), 1e-25);
  EXPECT_THROW(phi_prime(Complex::one(ctx), lam, BranchMode::PRINCIPAL, nullptr, ctx), PoleAt);
}

TEST(GFunction, BehavesLikeLogAtInfinity) {
  PrecisionContext ctx(50);
  Real lam = ctx.real("0.5");
  Complex z = C("3e4", "4e4", ctx);
  Complex d = g_function(z, lam, BranchMode::PRINCIPAL, nullptr, ctx) - log(z);
  EXPECT_LT(to_double(abs(d)), 1e-4);
  // w = g' at large z behaves like 1/z.
  Complex w = cauchy_transform_w(z, lam, BranchMode::PRINCIPAL, nullptr, ctx);
  EXPECT_LT(to_double(abs(w * z - 1L)), 1e-4);
}

TEST(SCurve, SegmentAtZeroLambda) {
  PrecisionContext ctx(40);
  SCurve c = traced("0", ctx);
  EXPECT_TRUE(c.is_segment());
  EXPECT_LT(to_double(abs(c.points().front() + 1L)), 1e-38);
  EXPECT_LT(to_double(abs(c.points().back() - 1L)), 1e-38);
  EXPECT_LT(gap(c.mass().back(), ctx.one()), 1e-10);
  // arcsine law: mass of [-1, 0] is 1/2.
  EXPECT_LT(to_double(boost::multiprecision::abs(project(c, Complex::zero(ctx)).mass - ctx.real("0.5"))), 1e-10);
}

TEST(SCurve, EndpointsMassAndLevel) {
  PrecisionContext ctx(50);
  for (const char* l : {"0.5", "1"}) {
    SCurve c = traced(l, ctx);
    EXPECT_LT(to_double(abs(c.points().front() + 1L)), 1e-45) << l;
    EXPECT_LT(to_double(abs(c.points().back() - 1L)), 1e-45) << l;
    EXPECT_LT(to_double(boost::multiprecision::abs(c.mass().front())), 1e-30) << l;
    EXPECT_LT(gap(c.mass().back(), ctx.one()), 1e-10) << l;
    EXPECT_TRUE(std::is_sorted(c.mass().begin(), c.mass().end()));
    EXPECT_LT(to_double(variational_residual(c, ctx)), 1e-20) << l;
    // The curve bulges into the upper half plane.
    for (const auto& p : c.points()) EXPECT_GE(p.im(), 0);
  }
}

TEST(SCurve, SymmetricUnderReflection) {
  PrecisionContext ctx(50);
  SCurve c = traced("0.8", ctx);
  for (std::size_t i = 0; i < c.size(); i += 17) {
    EXPECT_LT(to_double(distance_to_curve(c, -conj(c.points()[i]))), 1e-4);
  }
}

TEST(SCurve, ApexSolvesLevelEquation) {
  // On the imaginary axis Re phi(iy) = 2 log(y + sqrt(y^2 + 1)) - lambda sqrt(y^2 + 1).
  PrecisionContext ctx(50);
  double lam = 0.5;
  double lo = 1e-6, hi = 1;
  auto f = [&](double y) { return 2 * std::asinh(y) - lam * std::sqrt(y * y + 1); };
  for (int i = 0; i < 200; ++i) {
    double mid = (lo + hi) / 2;
    (f(mid) > 0 ? hi : lo) = mid;
  }
  SCurve c = traced("0.5", ctx);
  EXPECT_LT(to_double(distance_to_curve(c, C("0", std::to_string(lo), ctx))), 1e-4);
}

TEST(SCurve, RejectsBadParameters) {
  PrecisionContext ctx(40);
  EXPECT_THROW(traced("1.4", ctx), DomainError);
  EXPECT_THROW(traced("-0.1", ctx), DomainError);
  EXPECT_THROW(traced("0.5", ctx, "0.6"), DomainError);
}

TEST(SCurve, CurveIntegralOfDensityIsOne) {
  PrecisionContext ctx(50);
  SCurve c = traced("0.5", ctx);
  Complex total = curve_integral(c, [&](const Complex&) { return Complex::one(ctx); }, ctx);
  EXPECT_LT(to_double(abs(total - 1L)), 1e-10);
}

TEST(SProperty, ResidualShrinksWithStencil) {
  PrecisionContext ctx(30);
  SCurve c = traced("0.5", ctx);
  std::vector<double> worst;
  for (const char* h : {"0.02", "0.01", "0.005"}) {
    std::vector<Real> r = s_property_residual(c, 4, ctx.real(h), ctx);
    worst.push_back(to_double(*std::max_element(r.begin(), r.end())));
  }
  EXPECT_LT(worst[1], worst[0]);
  EXPECT_LT(worst[2], worst[1]);
  EXPECT_GE(std::log2(worst[1] / worst[2]), 1.8);
}

TEST(Trajectories, CrossingBeyondOneBelowCriticalLambda) {
  PrecisionContext ctx(40);
  Real lam = ctx.real("0.8");
  double h = to_double(h_of_lambda(lam, ctx));
  double want = std::cosh(h / 2);
  int crossings = 0;
  for (const auto& t : from_zstar(lam, ctx)) {
    EXPECT_EQ(t.origin, Trajectory::Origin::Z_STAR);
    if (t.termination != Trajectory::Termination::CROSSED_REAL_AXIS) continue;
    ++crossings;
    EXPECT_NEAR(std::abs(to_double(*t.real_crossing)), want, 1e-10);
  }
  EXPECT_EQ(crossings, 2);
}

TEST(Trajectories, CrossingInsideSegmentAboveCriticalLambda) {
  PrecisionContext ctx(40);
  Real lam = ctx.real("1.5");
  double h = to_double(h_of_lambda(lam, ctx));
  double want = std::sqrt(1 - h * h / 2.25);
  int crossings = 0;
  for (const auto& t : from_zstar(lam, ctx)) {
    if (t.termination != Trajectory::Termination::CROSSED_REAL_AXIS) continue;
    ++crossings;
    EXPECT_NEAR(std::abs(to_double(*t.real_crossing)), want, 1e-10);
  }
  EXPECT_EQ(crossings, 2);
}

TEST(Trajectories, LaunchAnglesAreOrthogonalPairs) {
  PrecisionContext ctx(40);
  auto a = zstar_launch_angles(ctx.real("0.9"), ctx);
  for (int k = 0; k < 3; ++k) EXPECT_LT(gap(a[k + 1] - a[k], ctx.pi() / 2), 1e-35);
}

TEST(Trajectories, RejectsPolesAndLowerHalfPlane) {
  PrecisionContext ctx(40);
  Real lam = ctx.real("0.8");
  Complex dir = Complex::i(ctx);
  EXPECT_THROW(trace_trajectory(Complex::one(ctx), lam, dir, ctx.real("0.01"), ctx), DomainError);
  EXPECT_THROW(trace_trajectory(C("0", "-1", ctx), lam, dir, ctx.real("0.01"), ctx), DomainError);
}
