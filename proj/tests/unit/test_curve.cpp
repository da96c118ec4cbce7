#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bhlab/curve.hpp"
#include "oracles.hpp"

using namespace bhlab;

namespace {

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("bhlab_test_" + name)).string();
}

} // namespace

TEST(Sampled, KappaHatCircle)
{
    const auto c = sample_function(circle_function(), 0.0, 2.0 * kPi, 100, true);
    EXPECT_NEAR(c.kappa_hat, 1.0, 0.05);
}

TEST(Sampled, KappaHatLineIsZero)
{
    const auto c = sample_function(line_function(Vec3(1, 2, 3), Vec3(0.6, 0.8, 0)), 0.0, 5.0, 50, false);
    EXPECT_LT(c.kappa_hat, 1e-8);
}

TEST(Sampled, KappaHatStadium)
{
    const auto c = sample_function(stadium_function(1.0), 0.0, stadium_length(1.0), 400, true);
    EXPECT_NEAR(c.kappa_hat, 1.0, 0.05);
}

TEST(Sampled, LengthExactForCircleSamples)
{
    // radius 2 at unit speed: period 4 pi; arc-corrected segments are exact on circles
    const auto c = sample_function(circle_function(2.0), 0.0, 4.0 * kPi, 37, true);
    EXPECT_NEAR(c.length(), 4.0 * kPi, 1e-9);
}

TEST(Sampled, ValidationErrors)
{
    std::vector<Vec3> p{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0), Vec3(3, 0, 0)};
    EXPECT_THROW(make_sampled_curve({0, 2, 1, 3}, p, false), UsageError);
    std::vector<Vec3> dup{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 0, 0), Vec3(3, 0, 0)};
    EXPECT_THROW(make_sampled_curve({0, 1, 2, 3}, dup, false), UsageError);
}

TEST(Polyline, ParseReportsLineNumbers)
{
    const std::string text = "t,x,y,z\n0,0,0,0\n1,1,0,0\n# note\n2,2,zero,0\n3,3,0,0\n";
    try {
        parse_polyline(text, "in.csv");
        FAIL() << "expected an error";
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("in.csv:5"), std::string::npos) << e.what();
    }
}

TEST(Polyline, RoundTripAndClosedDetection)
{
    const auto c = sample_function(circle_function(), 0.0, 2.0 * kPi, 40, true);
    const std::string path = temp_path("circle.csv");
    write_polyline(path, c);
    const auto back = ingest_polyline(path);
    std::remove(path.c_str());
    ASSERT_TRUE(back.closed);
    ASSERT_EQ(back.size(), c.size());
    EXPECT_NEAR(back.period, 2.0 * kPi, 1e-15);
    for (std::size_t i = 0; i < c.size(); ++i)
        EXPECT_EQ(back.p[i], c.p[i]);
}

TEST(Mollifier, UnitMass)
{
    EXPECT_NEAR(MollifierSpec{0.3}.mass(), 1.0, 1e-10);
}

TEST(Mollifier, LineUnchanged)
{
    const auto c = sample_function(line_function(Vec3(0, 1, 0), Vec3(1, 0, 0)), 0.0, 10.0, 101, false);
    const MollifiedCurve m(c, MollifierSpec{0.5});
    EXPECT_TRUE(m.window_shrunk());
    for (double t : {1.0, 4.3, 8.9})
        EXPECT_LT((m(t) - Vec3(t, 1, 0)).norm(), 1e-10);
}

TEST(Mollifier, CircleShrinksByFourierMultiplier)
{
    // a convolved circle is a circle of radius int K_h(s) cos(s) ds
    const double h = 0.05;
    const auto c = sample_function(circle_function(), 0.0, 2.0 * kPi, 2000, true);
    const MollifiedCurve m(c, MollifierSpec{h});
    const double mult = oracle::simpson(
        [&](double s) { const double u = s / h; return 15.0 / (16.0 * h) * (1 - u * u) * (1 - u * u) * std::cos(s); }, -h,
        h);
    EXPECT_NEAR(m(0.7).norm(), mult, 1e-5);
    EXPECT_LE(m.max_curvature(2000), 1.01);
    EXPECT_LE(m.sup_distance(), 2e-3);
}

TEST(Mollifier, StadiumCurvatureControlled)
{
    const auto c = sample_function(stadium_function(1.0), 0.0, stadium_length(1.0), 800, true);
    EXPECT_LE(MollifiedCurve(c, MollifierSpec{0.05}).max_curvature(8000), 1.05 * c.kappa_hat);
}

TEST(ArcLength, HalvedParameter)
{
    // c(2t): speed two, parameter range [0, pi)
    const auto f = [](double t, int order) {
        const double s = std::pow(2.0, order);
        switch (order % 4) {
        case 0: return Vec3(s * std::cos(2 * t), s * std::sin(2 * t), 0);
        case 1: return Vec3(-s * std::sin(2 * t), s * std::cos(2 * t), 0);
        case 2: return Vec3(-s * std::cos(2 * t), -s * std::sin(2 * t), 0);
        default: return Vec3(s * std::sin(2 * t), -s * std::cos(2 * t), 0);
        }
    };
    const auto c = sample_function(f, 0.0, kPi, 60, true);
    const auto r = arc_length_reparam(c);
    EXPECT_NEAR(r.period, 2.0 * kPi, 1e-9);
    EXPECT_NEAR(r.t[1] - r.t[0], 2.0 * (c.t[1] - c.t[0]), 1e-9);
    EXPECT_NEAR(arc_length(f, 0.0, kPi), 2.0 * kPi, 1e-12);
}

TEST(ArcLength, UnitSpeedCircleUnchanged)
{
    const auto c = sample_function(circle_function(), 0.0, 2.0 * kPi, 64, true);
    const auto r = arc_length_reparam(c);
    for (std::size_t i = 0; i < c.size(); ++i)
        EXPECT_NEAR(r.t[i], c.t[i], 1e-8);
}

TEST(ArcLength, ResampleIsEquallySpaced)
{
    const auto s = arc_length_resample(ellipse_function(1.0, 2.0), 0.0, 2.0 * kPi, 50, true);
    const double step = (s.p[1] - s.p[0]).norm();
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        EXPECT_NEAR(s.t[i + 1] - s.t[i], s.t[1] - s.t[0], 1e-9);
    EXPECT_GT(step, 0.0);
}
