#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "bhlab/bjorling.hpp"

namespace bhlab {

/// lambda(x, y) = cosh(y) cosh(a y) - sin(a x) sinh(y), the conformal factor of H_a.
double conformal_factor(double a, double x, double y);

/// Closed form of F_y(0, y) = (sinh y, sinh y sinh(a y), -cosh(a y)).
Vec3 tangent_on_meridian(double a, double y);

struct MetricSample {
    ComplexPoint z;
    double lambda = 0.0;
    Vec3 normal = Vec3::Zero();
    double mean_curv = 0.0;
    double gauss_curv = 0.0;
    /// Norm of the second fundamental form, sqrt(k1^2 + k2^2).
    double second_form_norm = 0.0;
};

/// First derivatives exact; second fundamental form from central
/// differences of the first derivatives with step h.
MetricSample curvature_sample(const SurfaceEvaluator& surface, ComplexPoint z, double h = 1e-4);

/// Normalized conformality defects at z: (||F_x| - |F_y|| / max(1, |F_x|),
/// |F_x . F_y| / |F_x|^2).
std::pair<double, double> conformality_residual(const SurfaceEvaluator& surface, ComplexPoint z);

/// Five-point Laplacian of F with step h divided by max(1, lambda^2); for a
/// conformal map this is 2|H|, so the value is scale invariant.
double harmonicity_residual(const SurfaceEvaluator& surface, ComplexPoint z, double h = 1e-4);

/// Unit normal at real t compared with the spinning normal of the spec.
double normal_interpolation_residual(const SurfaceEvaluator& surface, double t);

/// Stereographic projection from the north pole, (N1 + i N2) / (1 - N3).
cplx stereographic(const Vec3& n);

/// Gauss map of H_a in z: G(z) = -e^{iz} cos(a z) / (1 - sin(a z)).
cplx gauss_map_z(double a, ComplexPoint z);

/// Gaussian curvature times lambda^2 (curvature density in dx dy) of H_n,
/// from the Gauss map: -4 |G_z|^2 / (1 + |G|^2)^2.
double curvature_density(int n, ComplexPoint z);

/// Winding number of a closed curve sampled as complex values, in turns.
double winding_number(std::span<const cplx> values);

struct TotalCurvature {
    int degree = 0;          ///< degree of G from the argument principle
    double exact = 0.0;      ///< -4 pi degree
    double numeric = 0.0;    ///< mesh integral of K dA over the annulus
    double truncation = 0.0; ///< Gauss-image area of the two discarded caps
    double inner_radius = 0.0;
    double outer_radius = 0.0;
};

/// Degree of G by the argument principle on |w| = big_radius, and the mesh
/// integral of K dA over inner_radius <= |w| <= outer_radius with
/// `resolution` x `resolution` cells, graded exponentially in |w|.
TotalCurvature total_curvature(int n, int resolution = 400, double inner_radius = 1e-3,
                               double outer_radius = 1e3);

/// Degree of the Weierstrass Gauss map of H_n (throws on non-integer winding).
int gauss_map_degree(int n, double radius = 10.0, int samples = 4096);

struct LineContainment {
    double max_distance = 0.0;        ///< distance of F(t_k + i t) from the line
    double max_scalar_mismatch = 0.0; ///< |F . u - displayed scalar factor|
};

/// Displayed scalar factor of F(t_k + i t) along (cos t_k, sin t_k, 0).
double line_scalar_factor(double a, int k, double t);

/// t_k = (2k+1) pi / (2a); checks that F(t_k + i t) lies on the line
/// s (cos t_k, sin t_k, 0) for every sampled t.
LineContainment line_containment_check(double a, int k, std::span<const double> ts);

struct AsymptoticRay {
    std::vector<double> ts;
    std::vector<Vec3> scaled;       ///< e^{-(a+1)|T|} F(x + T i)
    Vec3 extrapolated = Vec3::Zero();
    Vec3 predicted = Vec3::Zero();  ///< limit with 1/(4(a+1))
    Vec3 printed = Vec3::Zero();    ///< -infinity only: limit with 1/(4(a-1))
    double rate = 0.0;              ///< observed geometric rate per unit T
    double error_predicted = 0.0;   ///< |extrapolated - predicted|
    double error_printed = 0.0;     ///< |extrapolated - printed| (-infinity only)
    double measured_constant = 0.0; ///< |horizontal part of the limit|
};

/// Scaled points along the vertical ray x + T i for T in ts (all of one sign,
/// increasing in |T|, equally spaced) and their limit extrapolated in e^{-|T|}.
AsymptoticRay asymptotic_ray_check(double a, double x, std::span<const double> ts);

struct BoundaryCurvature {
    double total = 0.0;
    double arcs = 0.0;    ///< integrated curvature of the four arcs
    double corners = 0.0; ///< sum of the four exterior angles
    std::array<double, 4> arc_curvature{};
    std::array<double, 4> corner_angle{};
    double asymptotic = 0.0; ///< 2 pi / a + 3 pi
};

/// Total curvature of the boundary of F([-pi/2a, pi/2a] x [0, T]); requires
/// a > 2 and T >= 0.1.
BoundaryCurvature boundary_total_curvature(double a, double T, int samples_per_arc = 4000);

} // namespace bhlab
