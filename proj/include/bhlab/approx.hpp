#pragma once

#include <functional>
#include <span>

#include "bhlab/bjorling.hpp"

namespace bhlab {

/// d(a) = log(a) / a.
double strip_halfwidth(double a);

struct StripDomain {
    double x0 = 0.0;
    double x1 = 2.0 * kPi;
    double d = 0.0;

    static StripDomain from_spin(double a, double x0 = 0.0, double x1 = 2.0 * kPi);
};

/// t_a(x, y), the primitive in y of lambda(x, .) vanishing at y = 0.
double ruling_parameter(double a, double x, double y);

/// R(x, y) = c(x) + t_a(x, y) (n x c')(x) for the circle; n x c' is the
/// direction of F_y on the real axis.
Vec3 ruled_eval(double a, double x, double y);

struct GridMax {
    double value = 0.0;
    cplx at{0.0, 0.0};
};

/// Maximum of f over [x0, x1] x [y0, y1]: nx x ny grid, then `rounds`
/// rounds of 9 x 9 subdivision around the current maximiser.
GridMax grid_sup(const std::function<double(cplx)>& f, double x0, double x1, double y0, double y1, int nx, int ny,
                 int rounds = 3);

/// sup |R - F| over [0, 2pi] x [-d(a), d(a)].
GridMax ruled_deviation_sup(double a, int nx = 200, int ny = 50);

struct DerivativeBound {
    double identity_residual = 0.0; ///< max | |D_fd|^2 - displayed expression |
    double analytic_residual = 0.0; ///< max |D_fd - (lambda (n x c') - F_y)|
    double max_ratio = 0.0;         ///< max |d_y (R - F)| / (cosh(ay) |sinh y|), y != 0
    cplx worst_ratio_at{0.0, 0.0};
};

/// 4 cos^2(ax) cosh(ay) sinh^2(y/2) (cosh y cosh(ay) - sin(ax) sinh y).
double derivative_identity_rhs(double a, double x, double y);

/// D_fd is the five-point central difference of R - F in y with step h.
DerivativeBound derivative_bound_check(double a, std::span<const cplx> grid, double h = 1e-5);

struct SecondOrderCloseness {
    double C = 0.0;
    double epsilon = 0.0;
    double argmax = 0.0; ///< t where the quotient peaks
};

/// C = max over t in [-eps, eps] \ {0} of max(|c - c~|, |n1 - n1~|, |n2 - n2~|) / t^2.
/// Throws UsageError when the data or their first derivatives differ at
/// t = 0 by more than `match_tol`.
SecondOrderCloseness second_order_constant(const BjorlingSpec& a, const BjorlingSpec& b, double epsilon,
                                           int samples = 4000, double match_tol = 1e-9);

struct ComparisonBound {
    double sup_dev = 0.0;
    double bound = 0.0;
    cplx argmax{0.0, 0.0};
    bool holds = false;
};

/// Box |Re z| < pi/a, |Im z| <= d(a); both surfaces NUMERIC with spin a.
/// Throws UsageError when sqrt(2) d(a) >= closeness.epsilon or pi/a > epsilon.
ComparisonBound comparison_bound_check(const BjorlingSpec& a_spec, const BjorlingSpec& b_spec, double a,
                                       const SecondOrderCloseness& closeness, int nx = 25, int ny = 13);

/// x -> scale * rotation * x + translation.
struct RigidMotion {
    Mat3 rotation = Mat3::Identity();
    Vec3 translation = Vec3::Zero();
    double scale = 1.0;

    Vec3 apply(const Vec3& p) const { return scale * (rotation * p) + translation; }
};

struct OsculatingCircle {
    bool flat = false;   ///< curvature below threshold; compare with a helicoid
    double kappa = 0.0;
    double t0 = 0.0;
    /// Maps the unit circle (with c(0) = (1,0,0), c'(0) = (0,1,0)) onto the
    /// osculating circle; scale is the radius 1/kappa.
    RigidMotion motion;
    /// Rotation of (n1, n2) about the tangent taking the circle's inward
    /// normal to the curve's n1 at t0.
    double frame_angle = 0.0;
    Vec3 point = Vec3::Zero();
    Vec3 tangent = Vec3::Zero();
    Vec3 n1 = Vec3::Zero();
    Vec3 n2 = Vec3::Zero();

    /// Unit circle spec in its normalized position.
    BjorlingSpec unit_spec(double spin) const { return BjorlingSpec::circle(spin); }
    /// Osculating circle (or tangent-line helicoid when flat) in world
    /// coordinates, parametrized so that t = 0 is the contact point and the
    /// frame matches (n1, n2) there.
    BjorlingSpec world_spec(double spin) const;
};

/// Curvature below 1e-8 throws UsageError unless allow_flat. `frame`, when
/// given, provides n1 at t0; otherwise n1 is the principal normal.
OsculatingCircle osculating_circle(const HolomorphicCurve& curve, double t0, const FrameField* frame = nullptr,
                                   bool allow_flat = false);

} // namespace bhlab
