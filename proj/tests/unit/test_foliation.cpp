#include <gtest/gtest.h>

#include <cmath>

#include "bhlab/foliation.hpp"

using namespace bhlab;

namespace {

const FundamentalPiece& piece30()
{
    static const FundamentalPiece p = extract_fundamental_piece(30, 2.0);
    return p;
}

} // namespace

TEST(Tube, CoordinatesRoundTrip)
{
    const Vec3 p(1.2 * std::cos(0.7), 1.2 * std::sin(0.7), 0.3);
    const TubeCoords c = tube_coords(2.0, p);
    ASSERT_TRUE(c.inside);
    EXPECT_NEAR(c.theta, 0.7, 1e-14);
    EXPECT_LT((from_tube_coords(c.theta, c.x) - p).norm(), 1e-14);
    EXPECT_FALSE(tube_coords(2.0, Vec3(0.1, 0, 0)).inside);
    EXPECT_NEAR(TubeRegion(2.0).tube_radius(), 1.5, 1e-15);
}

TEST(Piece, ContainsCoreSegmentAndFourArcs)
{
    const auto& p = piece30();
    for (int i = -5; i <= 5; ++i)
        EXPECT_TRUE(p.contains(cplx(p.half_width * i / 5.0 * 0.999, 0.0)));
    for (const auto& arc : p.arcs)
        EXPECT_FALSE(arc.empty());
    EXPECT_TRUE(p.columns_simple);
    EXPECT_LT(p.line_residual, 1e-9);
}

TEST(Piece, SymmetricUnderLineRotation)
{
    // z -> -z maps the strip to itself and fixes the tube
    const auto& p = piece30();
    for (double x : {-0.04, 0.0, 0.03}) {
        const auto [lo, hi] = p.bounds_at(x);
        const auto [lo2, hi2] = p.bounds_at(-x);
        EXPECT_NEAR(lo, -hi2, 1e-6);
        EXPECT_NEAR(hi, -lo2, 1e-6);
    }
}

TEST(Piece, NestedInR)
{
    const auto small = extract_fundamental_piece(30, 1.5);
    for (double x : {-0.05, 0.0, 0.05}) {
        const auto [lo, hi] = small.bounds_at(x);
        EXPECT_TRUE(piece30().contains(cplx(x, 0.999 * lo)));
        EXPECT_TRUE(piece30().contains(cplx(x, 0.999 * hi)));
    }
}

TEST(Piece, EscapingComponentIsNumericalError)
{
    EXPECT_THROW(extract_fundamental_piece(2, 3.0), NumericalError);
}

TEST(Circles, CountsAtHalfOffset)
{
    const DiskPoint x{1.5, 0.0};
    EXPECT_EQ(circle_intersection_count(piece30(), x, false).count, 1);
    const auto orbit = circle_intersection_count(piece30(), x, true);
    EXPECT_EQ(orbit.count, 60);
    EXPECT_GT(orbit.min_separation, 0.0);
}

TEST(Circles, CenterOfLeafDisk)
{
    EXPECT_EQ(circle_intersection_count(piece30(), DiskPoint{2.0, 0.0}, true).count, 60);
}

TEST(Circles, NearTubeWallStillHitsEveryCopy)
{
    EXPECT_EQ(circle_intersection_count(piece30(), DiskPoint{3.45, 0.0}, true).count, 60);
}

TEST(Circles, OutsideTubeCountsZero)
{
    EXPECT_EQ(circle_intersection_count(piece30(), DiskPoint{3.6, 0.0}, true).count, 0);
}

TEST(Circles, OrbitClosedUnderRotation)
{
    const auto r = circle_intersection_count(piece30(), DiskPoint{1.3, 0.4}, true);
    const Mat3 rot = Eigen::AngleAxisd(kPi / 30.0, Vec3::UnitZ()).toRotationMatrix();
    for (const Vec3& p : r.points) {
        double best = 1e9;
        for (const Vec3& q : r.points)
            best = std::min(best, (rot * p - q).norm());
        EXPECT_LT(best, 1e-8);
    }
}

TEST(Verdict, EmbeddedAtThirty)
{
    const auto r = embeddedness_verdict(30, 2.0, 120);
    EXPECT_EQ(r.verdict, Verdict::Embedded) << r.note;
    EXPECT_GT(r.min_angle_outside, 0.0);
    EXPECT_EQ(r.failures, 0);
}

TEST(Verdict, WindowFailureIsInconclusive)
{
    EXPECT_EQ(embeddedness_verdict(2, 3.0, 10).verdict, Verdict::Inconclusive);
}

TEST(Samples, HalfNearTheCoreCircle)
{
    const auto s = stratified_disk_samples(20, 2.0, 100);
    ASSERT_EQ(s.size(), 100u);
    int near = 0;
    for (const auto& p : s) {
        EXPECT_LT(std::hypot(p.rho - 2.0, p.x3), 1.5);
        near += std::hypot(p.rho - 1.0, p.x3) <= 3.0 / 20 + 1e-12;
    }
    EXPECT_GE(near, 50);
}

TEST(Foliation, AngleDecreasesWithA)
{
    const double a10 = foliation_angle_metric(10, 2.0, 0.3), a20 = foliation_angle_metric(20, 2.0, 0.3);
    EXPECT_LT(a20, a10);
    EXPECT_LE(foliation_angle_metric(20, 2.0, 1.0), a20 + 1e-12);
}

TEST(Singular, CloudNearUnitCircle)
{
    const std::vector<int> as{10, 20};
    const auto s = singular_set_estimate(as, 2.0);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_LT(s[1].hausdorff, s[0].hausdorff);
    EXPECT_LT(s[1].hausdorff, 4.0 / 20);
    const std::vector<int> bad{20, 10};
    EXPECT_THROW(singular_set_estimate(bad, 2.0), UsageError);
}
