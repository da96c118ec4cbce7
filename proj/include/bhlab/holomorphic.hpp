#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "bhlab/types.hpp"

namespace bhlab {

enum class Basis { Trig, Taylor };

/**
 * Entire vector-valued function C -> C^3 stored by coefficients.
 *
 * Trig:   f(z) = sum_{k=-K..K} c_k exp(i k w z), w = frequency (default 1,
 *         i.e. 2pi-periodic in Re z).
 * Taylor: f(z) = sum_{k=0..K} c_k ((z - center) / scale)^k.
 *
 * Curves built from real data (fits, closed forms) have conjugate-symmetric
 * trig coefficients or real Taylor coefficients, so they are real on the
 * real axis.
 */
class HolomorphicCurve {
public:
    HolomorphicCurve() = default;

    /// coeffs[k + K] multiplies exp(i k w z); size must be odd.
    static HolomorphicCurve trig(std::vector<CVec3> coeffs, double frequency = 1.0);
    static HolomorphicCurve taylor(std::vector<CVec3> coeffs, double center = 0.0, double scale = 1.0);
    static HolomorphicCurve constant(const Vec3& value);

    Basis basis() const { return basis_; }
    int degree() const { return degree_; }
    double frequency() const { return frequency_; }
    double center() const { return center_; }
    double scale() const { return scale_; }
    const std::vector<CVec3>& coeffs() const { return coeffs_; }

    /// Trig: coefficient of exp(i k w z). Taylor: coefficient of the k-th power.
    const CVec3& coeff(int k) const;

    /// Value of the deriv_order-th derivative at z (any order >= 0).
    CVec3 operator()(cplx z, int deriv_order = 0) const;

    HolomorphicCurve derivative() const;

    /// Real part on the real axis.
    Vec3 real_at(double t, int deriv_order = 0) const { return (*this)(cplx(t, 0.0), deriv_order).real(); }

    /// Period in Re z for trig curves (2pi / frequency); 0 for Taylor curves.
    double period() const;

private:
    Basis basis_ = Basis::Taylor;
    int degree_ = 0;
    double frequency_ = 1.0;
    double center_ = 0.0;
    double scale_ = 1.0;
    std::vector<CVec3> coeffs_{CVec3::Zero()};
};

/// Derivative of order 0, 1 or 2 by exact coefficient differentiation.
CVec3 eval_holo(const HolomorphicCurve& curve, ComplexPoint z, int deriv_order);

/// Straight-segment contour z0 -> z1 split into `subdivisions` equal pieces,
/// each integrated with an `order`-point Gauss-Legendre rule.
struct ContourSpec {
    ComplexPoint z0{0.0, 0.0};
    ComplexPoint z1{0.0, 0.0};
    int order = 16;
    int subdivisions = 1;

    /// Default rule: order 16, sub-segments no longer than max_piece.
    static ContourSpec segment(ComplexPoint from, ComplexPoint to, int order = 16, double max_piece = 0.25);
    void validate() const;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

using HoloIntegrand = std::function<CVec3(cplx)>;

CVec3 contour_integral(const HoloIntegrand& integrand, const ContourSpec& contour);
CVec3 contour_integral(const HolomorphicCurve& curve, const ContourSpec& contour);

/// Sample of a real curve: parameter and position.
struct CurveSample {
    double t;
    Vec3 p;
};

/// Least-squares trigonometric fit of degree K with base frequency w. The
/// fit is carried out in the real cos/sin basis so the returned coefficients
/// are conjugate-symmetric by construction. Requires >= 2K+1 samples with
/// t in [0, 2pi/w).
HolomorphicCurve fit_trig_poly(std::span<const CurveSample> samples, int degree, double frequency = 1.0);

/// Least-squares polynomial fit in the scaled variable (t - center) / scale.
HolomorphicCurve fit_taylor_poly(std::span<const CurveSample> samples, int degree, double center, double scale);

/// Maximum |curve(t) - p| over the samples.
double max_sample_residual(const HolomorphicCurve& curve, std::span<const CurveSample> samples);

} // namespace bhlab
