#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bhlab/types.hpp"

namespace bhlab {

/// Smooth real curve given with derivatives: f(t, order), order 0..2.
using CurveFunction = std::function<Vec3(double, int)>;

/**
 * Discrete curve. A closed curve has period t.back() - t.front() + gap,
 * stored in `period`; the closing point is not repeated.
 */
struct SampledCurve {
    std::vector<double> t;
    std::vector<Vec3> p;
    std::vector<Vec3> tangent;
    bool closed = false;
    bool input_tangents = false;
    double period = 0.0;
    /// Max difference quotient |T_{i+1} - T_i| / |p_{i+1} - p_i|.
    double kappa_hat = 0.0;

    std::size_t size() const { return t.size(); }
    /// Sum over segments of chord * (theta/2) / sin(theta/2), theta the
    /// turning of the unit tangents; exact for circle arcs and lines.
    double length() const;
    /// Length of segment i (i = size()-1 is the closing segment).
    double segment_length(std::size_t i) const;
};

/// Validates the samples, fills tangents by central differences when
/// `tangents` is empty and computes kappa_hat. For closed curves `period`
/// must exceed t.back() - t.front().
SampledCurve make_sampled_curve(std::vector<double> t, std::vector<Vec3> p, bool closed, double period = 0.0,
                                std::vector<Vec3> tangents = {});

/// CSV `t,x,y,z[,tx,ty,tz]` with `#` comments. A last row whose position
/// repeats the first row closes the curve; its t fixes the period.
SampledCurve ingest_polyline(const std::string& path);
SampledCurve parse_polyline(const std::string& text, const std::string& origin = "<string>");

/// Writes the CSV form read by ingest_polyline.
void write_polyline(const std::string& path, const SampledCurve& curve);

/// Kernel (15/16)(1 - u^2)^2 on [-1, 1] scaled to half-width h.
struct MollifierSpec {
    double h = 0.05;

    double kernel(double u, int order = 0) const;
    /// Quadrature check of the unit mass.
    double mass() const;
};

/**
 * Convolution of the piecewise-linear interpolant of a sampled curve with
 * the mollifier, evaluated exactly (per-segment Gauss-Legendre).
 */
class MollifiedCurve {
public:
    MollifiedCurve(SampledCurve source, MollifierSpec spec);

    Vec3 operator()(double t, int order = 0) const;
    CurveFunction function() const;

    const SampledCurve& source() const { return source_; }
    const MollifierSpec& spec() const { return spec_; }
    /// Parameter range where the kernel stays inside the data (open curves).
    double t_min() const;
    double t_max() const;
    bool window_shrunk() const { return !source_.closed; }

    /// Curvature |f' x f''| / |f'|^3.
    double curvature(double t) const;
    double max_curvature(int samples) const;
    /// max |f(t_i) - p_i| over source samples inside the window.
    double sup_distance() const;

private:
    SampledCurve source_;
    MollifierSpec spec_;
};

/// Re-samples the mollified curve at its source parameters; output is
/// C^2 (the kernel is C^1) and carries exact tangents.
SampledCurve mollify(const SampledCurve& curve, const MollifierSpec& spec);

/// Arc-length reparametrization: t_i becomes the cumulative segment length
/// (see SampledCurve::length), so length is kept and speed is one.
SampledCurve arc_length_reparam(const SampledCurve& curve);

/// Length of f over [t0, t1] by composite Gauss-Legendre.
double arc_length(const CurveFunction& f, double t0, double t1, int pieces = 256);

/// Samples f at n points equally spaced in arc length on [t0, t1]
/// (closed: the endpoint is omitted and period = length).
SampledCurve arc_length_resample(const CurveFunction& f, double t0, double t1, int n, bool closed);

/// Test curves.
CurveFunction circle_function(double radius = 1.0, double speed = 1.0);
/// Axis-aligned ellipse with semi-axes ax (x1) and by (x2); t = 0 at (ax, 0, 0).
CurveFunction ellipse_function(double ax, double by);
/// Two unit semicircles joined by straight segments of length `straight`,
/// unit speed, period 2 pi + 2 straight; t = 0 at the middle of the right arc.
CurveFunction stadium_function(double straight);
double stadium_length(double straight);
/// Segment p0 + t d.
CurveFunction line_function(const Vec3& p0, const Vec3& d);

/// n samples of f on [t0, t1) (closed, period t1 - t0) or [t0, t1];
/// tangents from f' when exact_tangents, otherwise by central differences.
SampledCurve sample_function(const CurveFunction& f, double t0, double t1, int n, bool closed,
                             bool exact_tangents = false);

} // namespace bhlab
