#pragma once

#include <optional>

#include "bhlab/bjorling.hpp"
#include "bhlab/curve.hpp"

namespace bhlab {

struct UnitSpeedFit {
    HolomorphicCurve curve;
    double length = 0.0;
    double c0_error = 0.0;    ///< max |c(s) - f(t(s))| at off-sample arc-length points
    double c1_error = 0.0;    ///< max |c'(s) - unit tangent of f|
    double speed_error = 0.0; ///< max ||c'(s)| - 1|
    int samples = 0;
};

/// Analytic unit-speed approximation of f on [t0, t1]: arc-length resampling
/// followed by a trig fit (closed, frequency 2pi/L, s in [0, L)) or a Taylor
/// fit centred at L/2 (open). Errors are measured between the fit samples.
UnitSpeedFit fit_unit_speed(const CurveFunction& f, double t0, double t1, bool closed, int degree, int samples = 0);

struct FrameOptions {
    int degree = 0;        ///< 0: smallest degree meeting the tolerance
    int max_degree = 160;
    int steps = 2048;      ///< RK4 steps (and fit samples) over the domain
    double tolerance = 1e-7;
    std::optional<Vec3> initial_n1;
};

struct FrameCheck {
    double unit = 0.0;
    double orthogonal = 0.0; ///< |n_j . T| with T = c'/|c'|
    double handed = 0.0;     ///< |n2 - T x n1|

    double worst() const { return std::max({unit, orthogonal, handed}); }
};

struct AnalyticFrame {
    FrameField frame;
    int degree = 0;
    double holonomy = 0.0;   ///< RMF rotation after one period (closed curves)
    double twist_rate = 0.0; ///< -holonomy / period, folded into the frame
    double fit_residual = 0.0;
    FrameCheck check;
};

/// Rotation-minimizing frame along real t by RK4, closed up by a uniform
/// twist, then fitted in the curve's own basis.
AnalyticFrame analytic_frame(const HolomorphicCurve& curve, const FrameOptions& options = {});

FrameCheck frame_check(const HolomorphicCurve& curve, const FrameField& frame, std::span<const double> ts);

struct SpinRounding {
    double requested = 0.0;
    double admissible = 0.0;
    int turns = 0; ///< a L / (2 pi) after rounding
};

/// For a closed core of length L the spinning normal closes up iff
/// a L is a multiple of 2 pi.
SpinRounding round_spin(double a, double length);

/// NUMERIC evaluator of the Björling surface with spin a.
SurfaceEvaluator build_bent_helicoid(const HolomorphicCurve& curve, const FrameField& frame, double a,
                                     double tolerance = 1e-9);

} // namespace bhlab
