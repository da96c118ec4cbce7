#include <gtest/gtest.h>

#include <cmath>

#include "bhlab/approx.hpp"
#include "bhlab/frame.hpp"
#include "oracles.hpp"

using namespace bhlab;

TEST(Ruled, ParameterIsPrimitiveOfLambda)
{
    for (double a : {5.0, 50.0}) {
        const double x = 0.3, y = strip_halfwidth(a);
        const double integral = oracle::simpson(
            [&](double s) { return std::cosh(s) * std::cosh(a * s) - std::sin(a * x) * std::sinh(s); }, 0.0, y);
        EXPECT_NEAR(ruling_parameter(a, x, y), integral, 1e-10);
    }
}

TEST(Ruled, TubeRadiusAtStripEdge)
{
    // at x = 0 the ruling reaches about 1/2 at y = log(a)/a, and about 1 at y = asinh(a)/a
    const double a = 50.0;
    const double half = oracle::simpson([&](double s) { return std::cosh(s) * std::cosh(a * s); }, 0.0, std::log(a) / a);
    EXPECT_NEAR(ruling_parameter(a, 0.0, strip_halfwidth(a)), half, 1e-10);
    EXPECT_NEAR(half, 0.5008, 1e-3);
    EXPECT_NEAR(ruling_parameter(a, 0.0, std::asinh(a) / a), 1.0, 0.02);
}

TEST(Ruled, CoincidesWithSurfaceOnOddQuarterLines)
{
    const double a = 6.0;
    for (int k : {0, 1, 2})
        for (double y : {-0.2, 0.1, 0.3}) {
            const double x = (2 * k + 1) * kPi / (2 * a);
            EXPECT_LT((ruled_eval(a, x, y) - bent_helicoid_closed(a, cplx(x, y))).norm(), 1e-12);
        }
    // but not on the lines x = k pi / a with k odd
    const double x = kPi / a;
    EXPECT_GT((ruled_eval(a, x, 0.3) - bent_helicoid_closed(a, cplx(x, 0.3))).norm(), 1e-3);
}

TEST(Ruled, CoreOnRealAxis)
{
    EXPECT_LT((ruled_eval(10.0, 1.0, 0.0) - Vec3(std::cos(1.0), std::sin(1.0), 0)).norm(), 1e-15);
}

TEST(Ruled, DeviationBelowStripWidth)
{
    EXPECT_LE(ruled_deviation_sup(10.0).value, strip_halfwidth(10.0));
    EXPECT_THROW(ruled_deviation_sup(10.0, 10, 10), UsageError);
}

TEST(GridSup, FindsInteriorMaximum)
{
    const auto m = grid_sup([](cplx z) { return -std::norm(z - cplx(0.123, -0.456)); }, -1, 1, -1, 1, 11, 11, 6);
    EXPECT_NEAR(m.at.real(), 0.123, 1e-4);
    EXPECT_NEAR(m.at.imag(), -0.456, 1e-4);
}

TEST(Derivative, IdentityHolds)
{
    std::vector<cplx> g;
    for (int i = 0; i < 8; ++i)
        g.emplace_back(0.7 * i, 0.02 + 0.01 * i);
    const auto b = derivative_bound_check(20.0, g);
    EXPECT_LT(b.identity_residual, 1e-8);
    EXPECT_LT(b.analytic_residual, 1e-8);
}

namespace {

struct EllipseSetup {
    UnitSpeedFit fit;
    AnalyticFrame frame;
    OsculatingCircle osc;
};

const EllipseSetup& ellipse()
{
    static const EllipseSetup s = [] {
        EllipseSetup e;
        e.fit = fit_unit_speed(ellipse_function(1.0, 1.2), 0.0, 2.0 * kPi, true, 40);
        e.frame = analytic_frame(e.fit.curve);
        e.osc = osculating_circle(e.fit.curve, 0.0, &e.frame.frame);
        return e;
    }();
    return s;
}

} // namespace

TEST(Osculating, EllipseVertexCurvature)
{
    // x-axis vertex of x^2 + y^2 / 1.44 = 1: kappa = a / b^2
    EXPECT_NEAR(ellipse().osc.kappa, 1.0 / 1.44, 1e-10);
    EXPECT_LT((ellipse().osc.point - Vec3(1, 0, 0)).norm(), 1e-12);
}

TEST(Osculating, WorldSpecMatchesToFirstOrder)
{
    const auto& e = ellipse();
    const BjorlingSpec c = e.osc.world_spec(20.0);
    for (int order = 0; order <= 2; ++order)
        EXPECT_LT((c.core().real_at(0.0, order) - e.fit.curve.real_at(0.0, order)).norm(), 1e-9) << order;
}

TEST(Comparison, ConstantScalesLinearlyAtVertex)
{
    // curvature is stationary at a vertex, so the deviation is O(t^3) and C ~ eps
    const auto& e = ellipse();
    const BjorlingSpec s(e.fit.curve, e.frame.frame, 20.0, 1e-8);
    const BjorlingSpec c = e.osc.world_spec(20.0);
    const double c1 = second_order_constant(s, c, 0.5).C;
    const double c2 = second_order_constant(s, c, 0.25).C;
    EXPECT_NEAR(c1 / c2, 2.0, 0.15);
}

TEST(Comparison, BoundHoldsAtFifty)
{
    const auto& e = ellipse();
    const BjorlingSpec s(e.fit.curve, e.frame.frame, 50.0, 1e-8);
    const BjorlingSpec c = e.osc.world_spec(50.0);
    const auto close = second_order_constant(s, c, 0.5);
    const auto r = comparison_bound_check(s, c, 50.0, close);
    EXPECT_TRUE(r.holds);
    EXPECT_LE(r.sup_dev, r.bound);
}

TEST(Comparison, BoxMustFitInsideEpsilon)
{
    const auto& e = ellipse();
    const BjorlingSpec s(e.fit.curve, e.frame.frame, 5.0, 1e-8);
    const BjorlingSpec c = e.osc.world_spec(5.0);
    const auto close = second_order_constant(s, c, 0.5);
    EXPECT_THROW(comparison_bound_check(s, c, 5.0, close), UsageError);
}

TEST(Comparison, MismatchedDataRejected)
{
    EXPECT_THROW(second_order_constant(BjorlingSpec::circle(3.0), BjorlingSpec::helicoid(3.0), 0.5), UsageError);
}
