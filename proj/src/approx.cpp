#include "bhlab/approx.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bhlab {

double strip_halfwidth(double a)
{
    if (!(a > 1.0))
        throw UsageError("strip half-width needs a > 1");
    return std::log(a) / a;
}

StripDomain StripDomain::from_spin(double a, double x0, double x1)
{
    return StripDomain{x0, x1, strip_halfwidth(a)};
}

double ruling_parameter(double a, double x, double y)
{
    return (a * std::cosh(y) * std::sinh(a * y) - std::cosh(a * y) * std::sinh(y)) / (a * a - 1.0) -
           std::sin(a * x) * (std::cosh(y) - 1.0);
}

namespace {

Vec3 ruling_direction(double a, double x)
{
    return Vec3(-std::sin(a * x) * std::cos(x), -std::sin(a * x) * std::sin(x), -std::cos(a * x));
}

} // namespace

Vec3 ruled_eval(double a, double x, double y)
{
    if (!(a > 1.0))
        throw UsageError("ruled_eval: a must be > 1");
    return Vec3(std::cos(x), std::sin(x), 0.0) + ruling_parameter(a, x, y) * ruling_direction(a, x);
}

GridMax grid_sup(const std::function<double(cplx)>& f, double x0, double x1, double y0, double y1, int nx, int ny,
                 int rounds)
{
    if (nx < 2 || ny < 2)
        throw UsageError("grid_sup: need at least 2 x 2 nodes");
    GridMax best{-std::numeric_limits<double>::infinity(), {x0, y0}};
    double hx = (x1 - x0) / (nx - 1), hy = (y1 - y0) / (ny - 1);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const cplx z(x0 + i * hx, y0 + j * hy);
            const double v = f(z);
            if (v > best.value)
                best = {v, z};
        }
    for (int r = 0; r < rounds; ++r) {
        const cplx c = best.at;
        const double lx = std::max(x0, c.real() - hx), ux = std::min(x1, c.real() + hx);
        const double ly = std::max(y0, c.imag() - hy), uy = std::min(y1, c.imag() + hy);
        hx = (ux - lx) / 8.0;
        hy = (uy - ly) / 8.0;
        for (int i = 0; i <= 8; ++i)
            for (int j = 0; j <= 8; ++j) {
                const cplx z(lx + i * hx, ly + j * hy);
                const double v = f(z);
                if (v > best.value)
                    best = {v, z};
            }
    }
    return best;
}

GridMax ruled_deviation_sup(double a, int nx, int ny)
{
    if (nx < 200 || ny < 50)
        throw UsageError("ruled_deviation_sup: grid must be at least 200 x 50");
    const double d = strip_halfwidth(a);
    return grid_sup(
        [a](cplx z) { return (ruled_eval(a, z.real(), z.imag()) - bent_helicoid_closed(a, z)).norm(); }, 0.0,
        2.0 * kPi, -d, d, nx, ny);
}

double derivative_identity_rhs(double a, double x, double y)
{
    const double c = std::cos(a * x), s = std::sinh(0.5 * y);
    return 4.0 * c * c * std::cosh(a * y) * s * s * (std::cosh(y) * std::cosh(a * y) - std::sin(a * x) * std::sinh(y));
}

DerivativeBound derivative_bound_check(double a, std::span<const cplx> grid, double h)
{
    if (!(a > 1.0))
        throw UsageError("derivative_bound_check: a must be > 1");
    auto diff = [a](double x, double y) { return ruled_eval(a, x, y) - bent_helicoid_closed(a, cplx(x, y)); };
    DerivativeBound r;
    for (const cplx& z : grid) {
        const double x = z.real(), y = z.imag();
        // fourth order: the second-order stencil loses ~ (a h)^2 at a = 100
        const Vec3 fd = (8.0 * (diff(x, y + h) - diff(x, y - h)) - (diff(x, y + 2.0 * h) - diff(x, y - 2.0 * h))) /
                        (12.0 * h);
        r.identity_residual = std::max(r.identity_residual, std::abs(fd.squaredNorm() - derivative_identity_rhs(a, x, y)));
        const double lambda = std::cosh(y) * std::cosh(a * y) - std::sin(a * x) * std::sinh(y);
        const Vec3 fy = -bent_helicoid_closed_derivative(a, z).imag();
        const Vec3 exact = lambda * ruling_direction(a, x) - fy;
        r.analytic_residual = std::max(r.analytic_residual, (fd - exact).norm());
        const double bound = std::cosh(a * y) * std::abs(std::sinh(y));
        if (bound > 0.0) {
            const double ratio = exact.norm() / bound;
            if (ratio > r.max_ratio) {
                r.max_ratio = ratio;
                r.worst_ratio_at = z;
            }
        }
    }
    return r;
}

SecondOrderCloseness second_order_constant(const BjorlingSpec& a, const BjorlingSpec& b, double epsilon, int samples,
                                           double match_tol)
{
    if (!(epsilon > 0.0) || samples < 2)
        throw UsageError("second_order_constant: epsilon must be positive");
    const auto& fa = a.frame();
    const auto& fb = b.frame();
    for (int order = 0; order <= 1; ++order) {
        const double dc = (a.core().real_at(0.0, order) - b.core().real_at(0.0, order)).norm();
        const double d1 = (fa.n1.real_at(0.0, order) - fb.n1.real_at(0.0, order)).norm();
        const double d2 = (fa.n2.real_at(0.0, order) - fb.n2.real_at(0.0, order)).norm();
        const double worst = std::max({dc, d1, d2});
        if (worst > match_tol) {
            std::ostringstream msg;
            msg << "second_order_constant: data differ at t = 0 in order " << order << " by " << worst;
            throw UsageError(msg.str());
        }
    }
    SecondOrderCloseness out;
    out.epsilon = epsilon;
    for (int i = 0; i <= samples; ++i) {
        const double t = -epsilon + 2.0 * epsilon * i / samples;
        if (std::abs(t) < 1e-3 * epsilon)
            continue;
        const double dev = std::max({(a.core().real_at(t) - b.core().real_at(t)).norm(),
                                     (fa.n1.real_at(t) - fb.n1.real_at(t)).norm(),
                                     (fa.n2.real_at(t) - fb.n2.real_at(t)).norm()});
        const double q = dev / (t * t);
        if (q > out.C) {
            out.C = q;
            out.argmax = t;
        }
    }
    return out;
}

ComparisonBound comparison_bound_check(const BjorlingSpec& a_spec, const BjorlingSpec& b_spec, double a,
                                       const SecondOrderCloseness& closeness, int nx, int ny)
{
    const double d = strip_halfwidth(a);
    if (!(std::sqrt(2.0) * d < closeness.epsilon) || !(kPi / a < closeness.epsilon)) {
        std::ostringstream msg;
        msg << "comparison_bound_check: box (pi/a = " << kPi / a << ", d = " << d
            << ") exceeds the closeness interval eps = " << closeness.epsilon;
        throw UsageError(msg.str());
    }
    const auto fa = SurfaceEvaluator::numeric(a_spec.with_spin(a));
    const auto fb = SurfaceEvaluator::numeric(b_spec.with_spin(a));
    // Open interval in x: stay a hair inside |Re z| < pi/a.
    const double xm = kPi / a * (1.0 - 1e-9);
    const GridMax m = grid_sup([&](cplx z) { return (fa.position(z) - fb.position(z)).norm(); }, -xm, xm, -d, d, nx, ny);
    ComparisonBound r;
    r.sup_dev = m.value;
    r.argmax = m.at;
    const double la = std::log(a);
    r.bound = 6.0 * closeness.C * la * la / (a * a);
    r.holds = r.sup_dev <= r.bound;
    return r;
}

BjorlingSpec OsculatingCircle::world_spec(double spin) const
{
    if (flat) {
        const CVec3 p0 = point.cast<cplx>(), tan = tangent.cast<cplx>();
        auto core = HolomorphicCurve::taylor({p0, tan});
        FrameField frame{HolomorphicCurve::constant(n1), HolomorphicCurve::constant(n2)};
        return BjorlingSpec(std::move(core), std::move(frame), spin);
    }
    const double r = 1.0 / kappa;
    const Mat3& q = motion.rotation;
    // cos(kt) e1' + sin(kt) e2' with e1' = Q e1, e2' = Q e2, in exp(+-i k t).
    const CVec3 e1 = q.col(0).cast<cplx>(), e2 = q.col(1).cast<cplx>(), e3 = q.col(2).cast<cplx>();
    const CVec3 plus = 0.5 * e1 - 0.5 * kI * e2;  // coefficient of exp(i k t)
    const CVec3 minus = 0.5 * e1 + 0.5 * kI * e2; // coefficient of exp(-i k t)
    const CVec3 centre = (motion.translation).cast<cplx>();
    std::vector<CVec3> c{r * minus, centre, r * plus};
    const double ct = std::cos(frame_angle), st = std::sin(frame_angle);
    // inward normal -(cos, sin) and binormal e3, rotated by frame_angle
    std::vector<CVec3> n1{-ct * minus, st * e3, -ct * plus};
    std::vector<CVec3> n2{st * minus, ct * e3, st * plus};
    FrameField frame{HolomorphicCurve::trig(std::move(n1), kappa), HolomorphicCurve::trig(std::move(n2), kappa)};
    return BjorlingSpec(HolomorphicCurve::trig(std::move(c), kappa), std::move(frame), spin);
}

OsculatingCircle osculating_circle(const HolomorphicCurve& curve, double t0, const FrameField* frame, bool allow_flat)
{
    const Vec3 p = curve.real_at(t0), d1 = curve.real_at(t0, 1), d2 = curve.real_at(t0, 2);
    const double speed = d1.norm();
    if (!(speed > 1e-12))
        throw UsageError("osculating_circle: curve is stationary at t0");
    OsculatingCircle oc;
    oc.t0 = t0;
    oc.point = p;
    oc.tangent = d1 / speed;
    oc.kappa = d1.cross(d2).norm() / (speed * speed * speed);
    const Vec3 accel_perp = d2 - d2.dot(oc.tangent) * oc.tangent;

    Vec3 n1;
    if (frame != nullptr) {
        n1 = frame->n1.real_at(t0);
        n1 = (n1 - n1.dot(oc.tangent) * oc.tangent).normalized();
    }
    if (oc.kappa < 1e-8) {
        if (!allow_flat) {
            std::ostringstream msg;
            msg << "osculating_circle: curvature " << oc.kappa << " below 1e-8; use the helicoid comparison";
            throw UsageError(msg.str());
        }
        oc.flat = true;
        if (frame == nullptr) {
            const Vec3 trial = std::abs(oc.tangent(2)) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
            n1 = (trial - trial.dot(oc.tangent) * oc.tangent).normalized();
        }
        oc.n1 = n1;
        oc.n2 = oc.tangent.cross(n1);
        oc.motion.translation = p;
        return oc;
    }
    const Vec3 normal = accel_perp.normalized();
    const Vec3 binormal = oc.tangent.cross(normal);
    if (frame == nullptr)
        n1 = normal;
    oc.n1 = n1;
    oc.n2 = oc.tangent.cross(n1);
    oc.frame_angle = std::atan2(n1.dot(binormal), n1.dot(normal));
    Mat3 q;
    q.col(0) = -normal;
    q.col(1) = oc.tangent;
    q.col(2) = binormal;
    oc.motion.rotation = q;
    oc.motion.scale = 1.0 / oc.kappa;
    // the unit circle's point (1,0,0) lands on p
    oc.motion.translation = p - oc.motion.scale * q.col(0);
    return oc;
}

} // namespace bhlab
