#include <gtest/gtest.h>

#include <cmath>

#include "bhlab/diffgeo.hpp"
#include "bhlab/frame.hpp"

using namespace bhlab;

TEST(FitUnitSpeed, CircleIsExact)
{
    const auto f = fit_unit_speed(circle_function(), 0.0, 2.0 * kPi, true, 4);
    EXPECT_NEAR(f.length, 2.0 * kPi, 1e-12);
    EXPECT_LT(f.c1_error, 1e-12);
    EXPECT_LT((f.curve.real_at(1.0) - Vec3(std::cos(1.0), std::sin(1.0), 0)).norm(), 1e-12);
}

TEST(FitUnitSpeed, OpenSegmentTaylor)
{
    const auto f = fit_unit_speed(line_function(Vec3(0, 0, 1), Vec3(0, 3, 4)), 0.0, 1.0, false, 3);
    EXPECT_NEAR(f.length, 5.0, 1e-12);
    EXPECT_LT(f.speed_error, 1e-10);
}

TEST(Frame, PlanarCircleIsInwardNormalAndBinormal)
{
    const auto f = fit_unit_speed(circle_function(), 0.0, 2.0 * kPi, true, 4);
    const auto fr = analytic_frame(f.curve);
    EXPECT_NEAR(fr.holonomy, 0.0, 1e-9);
    // constant rotation in the normal plane: n1 . (-c) is constant
    const double c0 = fr.frame.n1.real_at(0.0).dot(-f.curve.real_at(0.0));
    for (double t : {0.5, 2.0, 4.0})
        EXPECT_NEAR(fr.frame.n1.real_at(t).dot(-f.curve.real_at(t)), c0, 1e-8);
    EXPECT_LT(fr.check.worst(), 1e-7);
}

TEST(Frame, LineGivesConstantFrame)
{
    const auto f = fit_unit_speed(line_function(Vec3::Zero(), Vec3(1, 0, 0)), 0.0, 2.0, false, 2);
    FrameOptions o;
    o.initial_n1 = Vec3(0, 1, 0);
    const auto fr = analytic_frame(f.curve, o);
    for (double t : {0.1, 1.0, 1.9}) {
        EXPECT_LT((fr.frame.n1.real_at(t) - Vec3(0, 1, 0)).norm(), 1e-9);
        EXPECT_LT((fr.frame.n2.real_at(t) - Vec3(0, 0, 1)).norm(), 1e-9);
    }
}

TEST(Frame, HelixHolonomyClosesUp)
{
    // a closed space curve with torsion: (cos t, sin t, 0.3 sin 2t)
    const auto g = [](double t, int order) {
        switch (order) {
        case 0: return Vec3(std::cos(t), std::sin(t), 0.3 * std::sin(2 * t));
        case 1: return Vec3(-std::sin(t), std::cos(t), 0.6 * std::cos(2 * t));
        default: return Vec3(-std::cos(t), -std::sin(t), -1.2 * std::sin(2 * t));
        }
    };
    const auto f = fit_unit_speed(g, 0.0, 2.0 * kPi, true, 40);
    const auto fr = analytic_frame(f.curve);
    const double L = f.length;
    EXPECT_LT((fr.frame.n1.real_at(0.0) - fr.frame.n1.real_at(L)).norm(), 1e-9);
    EXPECT_LT(fr.check.worst(), 1e-7);
}

TEST(Frame, ExplicitLowDegreeSuggestsBetter)
{
    const auto g = [](double t, int order) {
        switch (order) {
        case 0: return Vec3(std::cos(t), std::sin(t), 0.3 * std::sin(2 * t));
        case 1: return Vec3(-std::sin(t), std::cos(t), 0.6 * std::cos(2 * t));
        default: return Vec3(-std::cos(t), -std::sin(t), -1.2 * std::sin(2 * t));
        }
    };
    const auto f = fit_unit_speed(g, 0.0, 2.0 * kPi, true, 40);
    FrameOptions o;
    o.degree = 2;
    EXPECT_THROW(analytic_frame(f.curve, o), NumericalError);
}

TEST(Spin, RoundsToWholeTurns)
{
    const auto r = round_spin(30.2, 2.0 * kPi);
    EXPECT_DOUBLE_EQ(r.admissible, 30.0);
    EXPECT_EQ(r.turns, 30);
    const auto s = round_spin(30.0, 8.0);
    EXPECT_NEAR(s.admissible * 8.0 / (2.0 * kPi), std::round(s.admissible * 8.0 / (2.0 * kPi)), 1e-12);
}

TEST(Build, CircleMatchesClosedForm)
{
    const auto f = fit_unit_speed(circle_function(), 0.0, 2.0 * kPi, true, 4);
    FrameOptions o;
    o.initial_n1 = Vec3(-1, 0, 0);
    const auto fr = analytic_frame(f.curve, o);
    const auto s = build_bent_helicoid(f.curve, fr.frame, 5.0);
    const auto c = SurfaceEvaluator::closed_circle(5.0);
    for (cplx z : {cplx(0.3, 0.2), cplx(4.0, -0.3)})
        EXPECT_LT((s.position(z) - c.position(z)).norm(), 1e-9);
}

TEST(Build, ZeroSpinIsMinimal)
{
    const auto f = fit_unit_speed(circle_function(), 0.0, 2.0 * kPi, true, 4);
    const auto fr = analytic_frame(f.curve);
    const auto s = build_bent_helicoid(f.curve, fr.frame, 0.0);
    for (cplx z : {cplx(0.2, 0.4), cplx(2.0, -0.3)})
        EXPECT_LT(std::abs(curvature_sample(s, z).mean_curv), 1e-5);
}
