#include "bhlab/frame.hpp"

#include <cmath>
#include <sstream>

namespace bhlab {

UnitSpeedFit fit_unit_speed(const CurveFunction& f, double t0, double t1, bool closed, int degree, int samples)
{
    if (degree < 1)
        throw UsageError("fit_unit_speed: degree must be >= 1");
    const int n = samples > 0 ? samples : std::max(512, 16 * degree);
    // twice as many points: even ones fit, odd ones validate
    const SampledCurve dense = arc_length_resample(f, t0, t1, closed ? 2 * n : 2 * n - 1, closed);
    const double length = closed ? dense.period : dense.t.back();
    std::vector<CurveSample> fit;
    for (std::size_t i = 0; i < dense.size(); i += 2)
        fit.push_back({dense.t[i], dense.p[i]});

    UnitSpeedFit out;
    out.length = length;
    out.samples = static_cast<int>(fit.size());
    out.curve = closed ? fit_trig_poly(fit, degree, 2.0 * kPi / length)
                       : fit_taylor_poly(fit, degree, 0.5 * length, 0.5 * length);
    for (std::size_t i = 0; i < dense.size(); ++i) {
        const double s = dense.t[i];
        const Vec3 c = out.curve.real_at(s), d = out.curve.real_at(s, 1);
        out.c0_error = std::max(out.c0_error, (c - dense.p[i]).norm());
        out.c1_error = std::max(out.c1_error, (d - dense.tangent[i]).norm());
        out.speed_error = std::max(out.speed_error, std::abs(d.norm() - 1.0));
    }
    return out;
}

FrameCheck frame_check(const HolomorphicCurve& curve, const FrameField& frame, std::span<const double> ts)
{
    FrameCheck r;
    for (double t : ts) {
        const Vec3 tan = curve.real_at(t, 1).normalized();
        const Vec3 n1 = frame.n1.real_at(t), n2 = frame.n2.real_at(t);
        r.unit = std::max({r.unit, std::abs(n1.norm() - 1.0), std::abs(n2.norm() - 1.0)});
        r.orthogonal = std::max({r.orthogonal, std::abs(n1.dot(tan)), std::abs(n2.dot(tan)), std::abs(n1.dot(n2))});
        r.handed = std::max(r.handed, (n2 - tan.cross(n1)).norm());
    }
    return r;
}

namespace {

struct Domain {
    double begin;
    double span;
    bool closed;
};

Domain frame_domain(const HolomorphicCurve& curve)
{
    if (curve.basis() == Basis::Trig)
        return {0.0, curve.period(), true};
    return {curve.center() - curve.scale(), 2.0 * curve.scale(), false};
}

// d n1 / dt = -(n1 . T') T, with T' the derivative of the unit tangent.
Vec3 rmf_rhs(const HolomorphicCurve& curve, double t, const Vec3& n1)
{
    const Vec3 d1 = curve.real_at(t, 1), d2 = curve.real_at(t, 2);
    const double sp = d1.norm();
    const Vec3 tan = d1 / sp;
    const Vec3 dtan = (d2 - d2.dot(tan) * tan) / sp;
    return -n1.dot(dtan) * tan;
}

HolomorphicCurve fit_like(const HolomorphicCurve& curve, std::span<const CurveSample> samples, int degree)
{
    if (curve.basis() == Basis::Trig)
        return fit_trig_poly(samples, degree, curve.frequency());
    return fit_taylor_poly(samples, degree, curve.center(), curve.scale());
}

} // namespace

AnalyticFrame analytic_frame(const HolomorphicCurve& curve, const FrameOptions& options)
{
    const Domain dom = frame_domain(curve);
    if (!(dom.span > 0.0))
        throw UsageError("analytic_frame: empty curve domain");
    const int steps = std::max(options.steps, 4 * options.max_degree + 8);
    const double dt = dom.span / steps;

    const Vec3 t0 = curve.real_at(dom.begin, 1);
    if (!(t0.norm() > 1e-12))
        throw UsageError("analytic_frame: curve is stationary");
    const Vec3 tan0 = t0.normalized();
    Vec3 n1;
    if (options.initial_n1) {
        n1 = *options.initial_n1 - options.initial_n1->dot(tan0) * tan0;
        if (!(n1.norm() > 1e-8))
            throw UsageError("analytic_frame: initial n1 is parallel to the tangent");
    } else {
        const Vec3 d2 = curve.real_at(dom.begin, 2);
        n1 = d2 - d2.dot(tan0) * tan0;
        if (n1.norm() < 1e-8 * std::max(1.0, d2.norm())) {
            const Vec3 trial = std::abs(tan0(2)) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
            n1 = trial - trial.dot(tan0) * tan0;
        }
    }
    n1.normalize();

    std::vector<double> ts(static_cast<std::size_t>(steps) + 1);
    std::vector<Vec3> n1s(ts.size());
    ts[0] = dom.begin;
    n1s[0] = n1;
    for (int i = 0; i < steps; ++i) {
        const double t = dom.begin + i * dt;
        const Vec3 k1 = rmf_rhs(curve, t, n1);
        const Vec3 k2 = rmf_rhs(curve, t + 0.5 * dt, n1 + 0.5 * dt * k1);
        const Vec3 k3 = rmf_rhs(curve, t + 0.5 * dt, n1 + 0.5 * dt * k2);
        const Vec3 k4 = rmf_rhs(curve, t + dt, n1 + dt * k3);
        n1 += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const Vec3 tan = curve.real_at(t + dt, 1).normalized();
        n1 = (n1 - n1.dot(tan) * tan).normalized();
        ts[static_cast<std::size_t>(i) + 1] = t + dt;
        n1s[static_cast<std::size_t>(i) + 1] = n1;
    }

    AnalyticFrame out;
    if (dom.closed) {
        const Vec3 b0 = tan0.cross(n1s.front());
        out.holonomy = std::atan2(n1s.back().dot(b0), n1s.back().dot(n1s.front()));
        out.twist_rate = -out.holonomy / dom.span;
    }
    const std::size_t count = dom.closed ? ts.size() - 1 : ts.size();
    std::vector<CurveSample> s1(count), s2(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Vec3 tan = curve.real_at(ts[i], 1).normalized();
        const Vec3 b = tan.cross(n1s[i]);
        const double psi = out.twist_rate * (ts[i] - dom.begin);
        const Vec3 m1 = std::cos(psi) * n1s[i] + std::sin(psi) * b;
        s1[i] = {ts[i], m1};
        s2[i] = {ts[i], tan.cross(m1)};
    }

    std::vector<double> check_ts;
    for (int i = 0; i < 997; ++i)
        check_ts.push_back(dom.begin + dom.span * (i + 0.5) / 997.0);

    auto attempt = [&](int degree) {
        AnalyticFrame f = out;
        f.degree = degree;
        f.frame = FrameField{fit_like(curve, s1, degree), fit_like(curve, s2, degree)};
        f.fit_residual = std::max(max_sample_residual(f.frame.n1, s1), max_sample_residual(f.frame.n2, s2));
        f.check = frame_check(curve, f.frame, check_ts);
        return f;
    };
    auto good = [&](const AnalyticFrame& f) {
        return f.fit_residual <= options.tolerance && f.check.worst() <= options.tolerance;
    };

    if (options.degree > 0) {
        AnalyticFrame f = attempt(options.degree);
        if (f.fit_residual > 1e-6) {
            int suggest = options.degree;
            while (suggest < options.max_degree) {
                suggest = std::min(options.max_degree, suggest + std::max(2, suggest / 2));
                if (good(attempt(suggest)))
                    break;
            }
            std::ostringstream msg;
            msg << "analytic_frame: fit residual " << f.fit_residual << " at degree " << options.degree
                << " exceeds 1e-6; try degree " << suggest;
            throw NumericalError(msg.str());
        }
        return f;
    }
    int degree = std::max(1, curve.degree());
    while (true) {
        AnalyticFrame f = attempt(degree);
        if (good(f))
            return f;
        if (degree >= options.max_degree) {
            std::ostringstream msg;
            msg << "analytic_frame: residual " << std::max(f.fit_residual, f.check.worst()) << " above "
                << options.tolerance << " at the maximum degree " << options.max_degree;
            throw NumericalError(msg.str());
        }
        degree = std::min(options.max_degree, degree + std::max(2, degree / 2));
    }
}

SpinRounding round_spin(double a, double length)
{
    if (!(a >= 0.0) || !(length > 0.0))
        throw UsageError("round_spin: need a >= 0 and a positive length");
    SpinRounding r;
    r.requested = a;
    r.turns = static_cast<int>(std::lround(a * length / (2.0 * kPi)));
    r.admissible = 2.0 * kPi * r.turns / length;
    return r;
}

SurfaceEvaluator build_bent_helicoid(const HolomorphicCurve& curve, const FrameField& frame, double a,
                                     double tolerance)
{
    return SurfaceEvaluator::numeric(BjorlingSpec(curve, frame, a, tolerance));
}

} // namespace bhlab
