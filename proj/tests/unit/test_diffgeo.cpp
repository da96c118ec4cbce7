#include <gtest/gtest.h>

#include <cmath>

#include "bhlab/diffgeo.hpp"
#include "oracles.hpp"

using namespace bhlab;

TEST(Metric, ConformalFactorValue)
{
    // published to five significant digits; the exact product is 1.7400178
    EXPECT_NEAR(conformal_factor(2.0, 0.0, 0.5), 1.74000, 5e-5);
    EXPECT_NEAR(conformal_factor(2.0, 0.0, 0.5), std::cosh(0.5) * std::cosh(1.0), 1e-14);
    for (double a : {2.0, 4.0, 0.5})
        for (cplx z : {cplx(0.3, 0.2), cplx(2.0, -0.7)})
            EXPECT_NEAR(conformal_factor(a, z.real(), z.imag()), oracle::speed_x(a, z.real(), z.imag()), 1e-7);
}

TEST(Metric, ClosedAndNumericLambdaAgree)
{
    const auto s = SurfaceEvaluator::closed_circle(2.0);
    const auto m = curvature_sample(s, cplx(0.0, 0.5));
    EXPECT_NEAR(m.lambda, conformal_factor(2.0, 0.0, 0.5), 1e-9);
}

TEST(Metric, GaussCurvatureFromLogLambda)
{
    // K = -Laplacian(log lambda) / lambda^2 for a conformal metric
    const double a = 3.0, h = 1e-3;
    auto ll = [&](double x, double y) { return std::log(conformal_factor(a, x, y)); };
    for (cplx z : {cplx(0.4, 0.1), cplx(1.3, -0.3)}) {
        const double x = z.real(), y = z.imag();
        const double lap = (ll(x + h, y) + ll(x - h, y) + ll(x, y + h) + ll(x, y - h) - 4 * ll(x, y)) / (h * h);
        const double lam = conformal_factor(a, x, y);
        const double k = -lap / (lam * lam);
        const auto m = curvature_sample(SurfaceEvaluator::closed_circle(a), z);
        EXPECT_NEAR(m.gauss_curv, k, 1e-4 * std::max(1.0, std::abs(k)));
        EXPECT_LT(std::abs(m.mean_curv), 1e-5);
        EXPECT_LE(m.gauss_curv, 1e-8);
    }
}

TEST(Metric, ConformalityAndHarmonicity)
{
    const auto s = SurfaceEvaluator::closed_circle(5.0);
    const auto [len, orth] = conformality_residual(s, cplx(1.0, 0.3));
    EXPECT_LT(len, 1e-12);
    EXPECT_LT(orth, 1e-12);
    EXPECT_LT(harmonicity_residual(s, cplx(1.0, 0.3)), 1e-5);
}

TEST(Winding, CountsTurns)
{
    std::vector<cplx> v;
    for (int i = 0; i < 200; ++i)
        v.push_back(std::polar(1.0, 2.0 * 2.0 * kPi * i / 200) + 0.1);
    EXPECT_NEAR(winding_number(v), 2.0, 1e-9);
}

TEST(TotalCurvature, DegreeIsNPlusOne)
{
    // G = -w (w^n + i) / (i w^n + 1): numerator degree n + 1 beats denominator degree n
    for (int n = 0; n <= 6; ++n)
        EXPECT_EQ(gauss_map_degree(n), n + 1);
}

TEST(TotalCurvature, IntegralNearMinusFourPi)
{
    const TotalCurvature tc = total_curvature(0, 200);
    EXPECT_NEAR(tc.numeric, -4.0 * kPi, 0.02 * 4.0 * kPi);
    EXPECT_THROW(total_curvature(-1), UsageError);
}

TEST(Lines, ScalarFactorAtOrigin)
{
    EXPECT_NEAR(line_scalar_factor(2.0, 0, 0.0), 1.0, 1e-15);
    const Vec3 p = bent_helicoid_closed(2.0, cplx(kPi / 4, 0));
    EXPECT_LT((p - Vec3(std::cos(kPi / 4), std::sin(kPi / 4), 0)).norm(), 1e-15);
}

TEST(Lines, ContainmentOnOddQuarterLines)
{
    std::vector<double> ts;
    for (int i = 0; i <= 20; ++i)
        ts.push_back(-1.0 + 0.1 * i);
    for (int k : {0, 1, 3}) {
        const auto r = line_containment_check(3.0, k, ts);
        EXPECT_LT(r.max_distance, 1e-12);
        EXPECT_LT(r.max_scalar_mismatch, 1e-12);
    }
}

TEST(Rays, PlusInfinityLimit)
{
    std::vector<double> ts{4.0, 5.0, 6.0, 7.0, 8.0};
    const auto r = asymptotic_ray_check(2.0, 0.0, ts);
    EXPECT_LT((r.extrapolated - Vec3(0, 1.0 / 12.0, 0)).norm(), 1e-9);
    EXPECT_GT(r.rate, 0.0);
}

TEST(Rays, MinusInfinityConstantIsOneOverFourAPlusOne)
{
    std::vector<double> ts{-4.0, -5.0, -6.0, -7.0, -8.0};
    const auto r = asymptotic_ray_check(3.0, 0.2, ts);
    EXPECT_NEAR(r.measured_constant, 1.0 / 16.0, 1e-9);
    EXPECT_GT(r.error_printed, 1e-2);
}

TEST(Rays, RejectsMixedSigns)
{
    std::vector<double> ts{-1.0, 1.0, 3.0};
    EXPECT_THROW(asymptotic_ray_check(2.0, 0.0, ts), UsageError);
}

TEST(Boundary, CorollaryValue)
{
    const auto b = boundary_total_curvature(3.0, 8.0, 2000);
    EXPECT_NEAR(b.total, 2.0 * kPi / 3.0 + 3.0 * kPi, 0.05 * b.asymptotic);
    EXPECT_LT(b.total, 4.0 * kPi);
}
