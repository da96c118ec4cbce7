#include <gtest/gtest.h>

#include <cmath>

#include "bhlab/bjorling.hpp"
#include "bhlab/diffgeo.hpp"
#include "oracles.hpp"

using namespace bhlab;

TEST(CircleSpec, FrameAtSpecialPoints)
{
    const auto s = BjorlingSpec::circle(2.0);
    EXPECT_LT((s.frame().n1.real_at(0.0) - Vec3(-1, 0, 0)).norm(), 1e-15);
    EXPECT_LT((spinning_normal(s, cplx(kPi / 4, 0)).real() - Vec3(0, 0, 1)).norm(), 1e-15);
    EXPECT_LT((s.core().real_at(0.0) - Vec3(1, 0, 0)).norm(), 1e-15);
}

TEST(CircleSpec, RejectsNonUnitSpeedCore)
{
    const auto s = BjorlingSpec::circle(2.0);
    std::vector<CVec3> co = s.core().coeffs();
    for (auto& c : co)
        c *= 2.0;
    EXPECT_THROW(BjorlingSpec(HolomorphicCurve::trig(co), s.frame(), 2.0), UsageError);
}

TEST(ClosedForm, MatchesHandIntegratedOracle)
{
    for (double a : {2.0, 3.0, 0.5, 1.5, 7.0})
        for (double x : {0.0, 0.4, 2.9})
            for (double y : {-0.6, 0.0, 0.3}) {
                const Vec3 f = bent_helicoid_closed(a, cplx(x, y));
                EXPECT_LT((f - oracle::bent_helicoid(a, x, y)).norm(), 1e-12) << a << " " << x << " " << y;
            }
}

TEST(ClosedForm, CoreCircleOnRealAxis)
{
    for (int i = 0; i < 50; ++i) {
        const double t = 0.13 * i;
        EXPECT_LT((bent_helicoid_closed(2.0, cplx(t, 0)) - Vec3(std::cos(t), std::sin(t), 0)).norm(), 1e-12);
    }
}

TEST(Numeric, AgreesWithClosedForm)
{
    for (double a : {2.0, 5.0}) {
        const auto n = SurfaceEvaluator::numeric(BjorlingSpec::circle(a));
        const auto c = SurfaceEvaluator::closed_circle(a);
        for (cplx z : {cplx(0.1, 0.4), cplx(3.0, -0.5), cplx(5.5, 0.25)})
            EXPECT_LT((n.position(z) - c.position(z)).norm(), 1e-10);
    }
}

TEST(Numeric, DerivativeMatchesFiniteDifference)
{
    const auto s = SurfaceEvaluator::numeric(BjorlingSpec::circle(3.0));
    const cplx z(0.7, 0.2);
    const double h = 1e-5;
    const Vec3 fx = (s.position(z + h) - s.position(z - h)) / (2 * h);
    const Vec3 fy = (s.position(z + cplx(0, h)) - s.position(z - cplx(0, h))) / (2 * h);
    EXPECT_LT((fx - s.fx(z)).norm(), 1e-8);
    EXPECT_LT((fy - s.fy(z)).norm(), 1e-8);
}

TEST(Numeric, HelicoidIsMinimal)
{
    const auto s = SurfaceEvaluator::numeric(BjorlingSpec::helicoid(2.0));
    for (cplx z : {cplx(0.3, 0.2), cplx(-1.0, 0.5)})
        EXPECT_LT(std::abs(curvature_sample(s, z).mean_curv), 1e-5);
}

TEST(Weierstrass, IntegratedFormMatchesClosedForm)
{
    std::vector<cplx> g;
    for (int i = 0; i < 12; ++i)
        for (int j = 1; j <= 4; ++j)
            g.emplace_back(0.5 * i, 0.1 * j);
    EXPECT_LT(weierstrass_consistency(3, g), 1e-10);
}

TEST(Weierstrass, GaussMapIsStereographicNormal)
{
    // the Gauss map of H_n in w = e^{iz} is the stereographic image of the unit normal
    const int n = 4;
    const auto s = SurfaceEvaluator::closed_circle(n);
    for (cplx z : {cplx(0.2, 0.3), cplx(1.1, -0.4)}) {
        const cplx g = weierstrass_eval(n, std::exp(kI * z)).gauss;
        const cplx viaNormal = stereographic(s.unit_normal(z));
        EXPECT_LT(std::abs(g - viaNormal), 1e-10);
    }
}

TEST(Symmetry, ResidualsVanish)
{
    std::vector<cplx> g;
    for (int i = 0; i < 10; ++i)
        g.emplace_back(0.6 * i, -0.4 + 0.09 * i);
    const auto s = SurfaceEvaluator::closed_circle(3.0);
    EXPECT_LT(symmetry_residual(s, SymmetryElement::translation_2pi(3.0), g), 1e-12);
    EXPECT_LT(symmetry_residual(s, SymmetryElement::axis_rotation(3.0), g), 1e-12);
    EXPECT_LT(symmetry_residual(s, SymmetryElement::line_rotation_180(3.0, 1), g), 1e-12);
    // the holomorphic version of the axis rotation is not a symmetry
    SymmetryElement wrong = SymmetryElement::axis_rotation(3.0);
    wrong.anti_holomorphic = false;
    EXPECT_GT(symmetry_residual(s, wrong, g), 1e-3);
}

TEST(Symmetry, NonIntegerSpinBreaksPeriodicity)
{
    std::vector<cplx> g{cplx(0.3, 0.1), cplx(1.0, -0.2)};
    const auto s = SurfaceEvaluator::closed_circle(2.5);
    EXPECT_THROW(symmetry_residual(s, SymmetryElement::translation_2pi(2.5), g), UsageError);
    for (const cplx& z : g)
        EXPECT_GT((s.position(z + 2.0 * kPi) - s.position(z)).norm(), 1e-3);
}
