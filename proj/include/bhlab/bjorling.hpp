#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bhlab/holomorphic.hpp"

namespace bhlab {

/// Analytic normal frame (n1, n2) along a core curve; n2 = c' x n1 on the real axis.
struct FrameField {
    HolomorphicCurve n1;
    HolomorphicCurve n2;
};

/// Worst deviations of a frame from orthonormality along real samples.
struct FrameResidual {
    double unit = 0.0;       ///< max ||n_j| - 1|
    double orthogonal = 0.0; ///< max |n1.c'|, |n2.c'|, |n1.n2|
    double handed = 0.0;     ///< max |n2 - c' x n1|
    double speed = 0.0;      ///< max ||c'| - 1|

    double worst() const { return std::max({unit, orthogonal, handed, speed}); }
};

FrameResidual frame_residual(const HolomorphicCurve& core, const FrameField& frame, std::span<const double> ts);

/// Real sample grid used for invariant checks: one period for trig cores,
/// [center - scale, center + scale] for Taylor cores.
std::vector<double> real_check_grid(const HolomorphicCurve& core, int count = 96);

/**
 * Full Björling input: unit-speed analytic core c, analytic frame (n1, n2)
 * and spin rate a. The spinning normal is n = cos(a t) n1 + sin(a t) n2.
 */
class BjorlingSpec {
public:
    /// Validates unit speed and frame orthonormality on real_check_grid
    /// within `tolerance`; throws UsageError otherwise.
    BjorlingSpec(HolomorphicCurve core, FrameField frame, double spin, double tolerance = 1e-9);

    /// Unit circle in the (x1, x2)-plane with n1 = -c, n2 = e3.
    static BjorlingSpec circle(double spin);
    /// Straight line along x1 with n1 = (0, -1, 0), n2 = (0, 0, -1): the helicoid.
    static BjorlingSpec helicoid(double spin);

    const HolomorphicCurve& core() const { return core_; }
    const HolomorphicCurve& core_velocity() const { return velocity_; }
    const FrameField& frame() const { return frame_; }
    double spin() const { return spin_; }
    BjorlingSpec with_spin(double spin) const;

private:
    HolomorphicCurve core_;
    HolomorphicCurve velocity_;
    FrameField frame_;
    double spin_;
};

/// cos(a z) n1(z) + sin(a z) n2(z).
CVec3 spinning_normal(const BjorlingSpec& spec, ComplexPoint z);
/// Derivative of the spinning normal in z.
CVec3 spinning_normal_derivative(const BjorlingSpec& spec, ComplexPoint z);

/// F(z) = Re(c(z) - i int_0^z n(w) x c'(w) dw) by Gauss-Legendre quadrature.
Vec3 bjorling_immersion(const BjorlingSpec& spec, ComplexPoint z, int order = 16, double max_piece = 0.25);

/**
 * Closed form of the circular bent helicoid H_a, a != 1, a > 0.
 * Sign convention: the third coordinate is -cos(ax) sinh(ay) / a, the value
 * produced by the quadrature of the Björling integral.
 */
Vec3 bent_helicoid_closed(double a, ComplexPoint z);
/// Holomorphic derivative f'(z) of the closed form; F_x = Re f', F_y = -Im f'.
CVec3 bent_helicoid_closed_derivative(double a, ComplexPoint z);

/// Weierstrass data of H_n in w = exp(iz).
struct WeierstrassData {
    cplx gauss; ///< G(w) = -w (w^n + i) / (i w^n + 1)
    cplx dh;    ///< coefficient of dw in dh = (w^n + w^-n) / (2w) dw
};

WeierstrassData weierstrass_eval(int n, ComplexPoint w);

/// The Weierstrass integrand (1/2 (1/G - G), i/2 (1/G + G), 1) dh pulled
/// back to z; pole-free form valid on all of C.
CVec3 weierstrass_integrand_z(int n, ComplexPoint z);

enum class SurfaceKind { Numeric, ClosedCircle, Weierstrass };

/**
 * Conformal immersion F of (part of) C into R^3 with access to the
 * holomorphic derivative f' (F = Re f up to translation). Immutable and
 * cheap to copy.
 */
class SurfaceEvaluator {
public:
    static SurfaceEvaluator numeric(BjorlingSpec spec, int order = 16, double max_piece = 0.25);
    static SurfaceEvaluator closed_circle(double a);
    static SurfaceEvaluator weierstrass(int n);

    SurfaceKind kind() const;
    double spin() const;
    const BjorlingSpec* spec() const;
    Vec3 translation() const;

    Vec3 position(ComplexPoint z) const;
    CVec3 holo_derivative(ComplexPoint z) const;
    Vec3 fx(ComplexPoint z) const { return holo_derivative(z).real(); }
    Vec3 fy(ComplexPoint z) const { return -holo_derivative(z).imag(); }
    /// F_x x F_y normalized.
    Vec3 unit_normal(ComplexPoint z) const;

    struct Impl;

private:
    explicit SurfaceEvaluator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

enum class SymmetryKind { Identity, Translation2Pi, AxisRotation, LineRotation180 };

/**
 * Rigid motion of R^3 together with the parameter-domain motion it induces.
 * The parameter motion is z -> s*z + shift (holomorphic) or conj(z) + shift
 * (anti-holomorphic).
 */
struct SymmetryElement {
    SymmetryKind kind = SymmetryKind::Identity;
    double spin = 0.0;
    int index = 0;
    Mat3 rotation = Mat3::Identity();
    bool anti_holomorphic = false;
    double scale = 1.0;
    cplx shift{0.0, 0.0};

    static SymmetryElement identity();
    static SymmetryElement translation_2pi(double spin);
    /// Rotation about the x3-axis by power * pi / a; odd powers reverse the
    /// parameter orientation: z -> conj(z) + power * pi / a.
    static SymmetryElement axis_rotation(double spin, int power = 1);
    /// 180 degree rotation about the line through (cos t_k, sin t_k, 0),
    /// t_k = k pi / a; parameter motion z -> 2 t_k - z.
    static SymmetryElement line_rotation_180(double spin, int k);

    Vec3 apply(const Vec3& p) const { return rotation * p; }
    cplx apply_param(cplx z) const { return (anti_holomorphic ? std::conj(z) : scale * z) + shift; }
};

/// max over the grid of |motion(F(z)) - F(param_motion(z))|.
double symmetry_residual(const SurfaceEvaluator& surface, const SymmetryElement& sym, std::span<const cplx> grid);

/// Deviation between the integrated Weierstrass form and the closed form
/// on a grid, after removing the translation at grid[0].
double weierstrass_consistency(int n, std::span<const cplx> grid);

} // namespace bhlab
