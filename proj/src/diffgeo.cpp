#include "bhlab/diffgeo.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace bhlab {

double conformal_factor(double a, double x, double y)
{
    return std::cosh(y) * std::cosh(a * y) - std::sin(a * x) * std::sinh(y);
}

Vec3 tangent_on_meridian(double a, double y)
{
    return Vec3(std::sinh(y), std::sinh(y) * std::sinh(a * y), -std::cosh(a * y));
}

MetricSample curvature_sample(const SurfaceEvaluator& surface, ComplexPoint z, double h)
{
    MetricSample s;
    s.z = z;
    const Vec3 fx = surface.fx(z), fy = surface.fy(z);
    const double e = fx.dot(fx), f = fx.dot(fy), g = fy.dot(fy);
    s.lambda = std::sqrt(0.5 * (e + g));
    if (!(s.lambda >= 1e-12))
        throw NumericalError("curvature_sample: degenerate metric (lambda < 1e-12)");
    const Vec3 cross = fx.cross(fy);
    s.normal = cross / cross.norm();

    const cplx dx(h, 0.0), dy(0.0, h);
    const Vec3 fxx = (surface.fx(z + dx) - surface.fx(z - dx)) / (2.0 * h);
    const Vec3 fxy = 0.5 * ((surface.fx(z + dy) - surface.fx(z - dy)) + (surface.fy(z + dx) - surface.fy(z - dx))) /
                     (2.0 * h);
    const Vec3 fyy = (surface.fy(z + dy) - surface.fy(z - dy)) / (2.0 * h);
    const double l = fxx.dot(s.normal), m = fxy.dot(s.normal), n = fyy.dot(s.normal);
    const double det = e * g - f * f;
    s.mean_curv = (e * n - 2.0 * f * m + g * l) / (2.0 * det);
    s.gauss_curv = (l * n - m * m) / det;
    s.second_form_norm = std::sqrt(std::max(0.0, 4.0 * s.mean_curv * s.mean_curv - 2.0 * s.gauss_curv));
    return s;
}

std::pair<double, double> conformality_residual(const SurfaceEvaluator& surface, ComplexPoint z)
{
    const Vec3 fx = surface.fx(z), fy = surface.fy(z);
    const double nx = fx.norm(), ny = fy.norm();
    return {std::abs(nx - ny) / std::max(1.0, nx), std::abs(fx.dot(fy)) / (nx * nx)};
}

double harmonicity_residual(const SurfaceEvaluator& surface, ComplexPoint z, double h)
{
    const cplx dx(h, 0.0), dy(0.0, h);
    const Vec3 lap = (surface.position(z + dx) + surface.position(z - dx) + surface.position(z + dy) +
                      surface.position(z - dy) - 4.0 * surface.position(z)) /
                     (h * h);
    const Vec3 fx = surface.fx(z);
    return lap.norm() / std::max(1.0, fx.squaredNorm());
}

double normal_interpolation_residual(const SurfaceEvaluator& surface, double t)
{
    const BjorlingSpec* spec = surface.spec();
    Vec3 expected;
    if (spec != nullptr) {
        expected = spinning_normal(*spec, cplx(t, 0.0)).real();
    } else {
        const double a = surface.spin();
        expected = std::cos(a * t) * Vec3(-std::cos(t), -std::sin(t), 0.0) + std::sin(a * t) * Vec3(0.0, 0.0, 1.0);
    }
    return (surface.unit_normal(cplx(t, 0.0)) - expected).norm();
}

cplx stereographic(const Vec3& n)
{
    return cplx(n(0), n(1)) / (1.0 - n(2));
}

cplx gauss_map_z(double a, ComplexPoint z)
{
    return -std::exp(kI * z) * std::cos(a * z) / (1.0 - std::sin(a * z));
}

double curvature_density(int n, ComplexPoint z)
{
    const cplx w = std::exp(kI * z);
    const cplx wn = std::exp(kI * static_cast<double>(n) * z);
    const cplx p = wn + kI, q = kI * wn + 1.0;
    const cplx g = -w * p / q;
    // dG/dw = -P/Q - 2n w^n / Q^2 since P'Q - PQ' = 2n w^{n-1}.
    const cplx dg_dw = -p / q - 2.0 * static_cast<double>(n) * wn / (q * q);
    const cplx dg_dz = dg_dw * kI * w;
    const double denom = 1.0 + std::norm(g);
    return -4.0 * std::norm(dg_dz) / (denom * denom);
}

double winding_number(std::span<const cplx> values)
{
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const cplx a = values[i], b = values[(i + 1) % values.size()];
        if (a == cplx(0.0, 0.0) || b == cplx(0.0, 0.0))
            throw NumericalError("winding_number: contour passes through zero");
        total += std::arg(b / a);
    }
    return total / (2.0 * kPi);
}

int gauss_map_degree(int n, double radius, int samples)
{
    if (n < 0)
        throw UsageError("gauss_map_degree: n must be >= 0");
    // Solutions of G(w) = c for a generic c are the zeros of
    // -w (w^n + i) - c (i w^n + 1), a polynomial whose roots all lie inside
    // |w| = radius; their count is the degree of G.
    const cplx c(0.37, 0.61);
    std::vector<cplx> values(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const cplx w = std::polar(radius, 2.0 * kPi * j / samples);
        const cplx wn = std::pow(w, n);
        values[static_cast<std::size_t>(j)] = -w * (wn + kI) - c * (kI * wn + 1.0);
    }
    const double turns = winding_number(values);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 1e-6) {
        std::ostringstream msg;
        msg << "gauss_map_degree: winding " << turns << " is not an integer (contour hit a pole?)";
        throw NumericalError(msg.str());
    }
    return static_cast<int>(rounded);
}

TotalCurvature total_curvature(int n, int resolution, double inner_radius, double outer_radius)
{
    if (n < 0)
        throw UsageError("total_curvature: n must be >= 0");
    if (resolution < 2 || !(inner_radius > 0.0) || !(outer_radius > inner_radius))
        throw UsageError("total_curvature: invalid mesh");
    TotalCurvature tc;
    tc.degree = gauss_map_degree(n);
    tc.exact = -4.0 * kPi * tc.degree;
    tc.inner_radius = inner_radius;
    tc.outer_radius = outer_radius;

    // |w| = e^{-y}: exponentially graded annuli are a uniform grid in y.
    const double y_lo = -std::log(outer_radius), y_hi = -std::log(inner_radius);
    const double dx = 2.0 * kPi / resolution, dy = (y_hi - y_lo) / resolution;
    double sum = 0.0;
    for (int i = 0; i < resolution; ++i) {
        const double y = y_lo + (i + 0.5) * dy;
        double row = 0.0;
        for (int j = 0; j < resolution; ++j)
            row += curvature_density(n, cplx((j + 0.5) * dx, y));
        sum += row;
    }
    tc.numeric = sum * dx * dy;

    auto mean_abs_g = [n](double y) {
        double acc = 0.0;
        const int m = 64;
        for (int j = 0; j < m; ++j) {
            const cplx z(2.0 * kPi * j / m, y);
            const cplx w = std::exp(kI * z), wn = std::exp(kI * static_cast<double>(n) * z);
            acc += std::abs(-w * (wn + kI) / (kI * wn + 1.0));
        }
        return acc / m;
    };
    const double g_out = mean_abs_g(y_lo), g_in = mean_abs_g(y_hi);
    tc.truncation = 4.0 * kPi / (1.0 + g_out * g_out) + 4.0 * kPi * g_in * g_in / (1.0 + g_in * g_in);
    return tc;
}

double line_scalar_factor(double a, int k, double t)
{
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    return (sgn * std::cosh(a * t) * std::sinh(t) + std::cosh(t) * (a * a - sgn * std::sinh(a * t) * a - 1.0)) /
           (a * a - 1.0);
}

LineContainment line_containment_check(double a, int k, std::span<const double> ts)
{
    if (!(a > 1.0))
        throw UsageError("line_containment_check: a must be > 1");
    const double tk = (2.0 * k + 1.0) * kPi / (2.0 * a);
    const Vec3 u(std::cos(tk), std::sin(tk), 0.0);
    LineContainment r;
    for (double t : ts) {
        const Vec3 p = bent_helicoid_closed(a, cplx(tk, t));
        const double s = p.dot(u);
        r.max_distance = std::max(r.max_distance, (p - s * u).norm());
        const double expected = line_scalar_factor(a, k, t);
        r.max_scalar_mismatch = std::max(r.max_scalar_mismatch, std::abs(s - expected) / std::max(1.0, std::abs(expected)));
    }
    return r;
}

AsymptoticRay asymptotic_ray_check(double a, double x, std::span<const double> ts)
{
    if (!(a > 1.0))
        throw UsageError("asymptotic_ray_check: a must be > 1");
    if (ts.size() < 3)
        throw UsageError("asymptotic_ray_check: need at least three T values");
    const double sign = ts[0] > 0.0 ? 1.0 : -1.0;
    const double step = std::abs(ts[1] - ts[0]);
    for (std::size_t j = 0; j < ts.size(); ++j) {
        if (ts[j] * sign <= 0.0)
            throw UsageError("asymptotic_ray_check: T values must share one sign");
        if (j > 0 && std::abs(std::abs(ts[j]) - std::abs(ts[j - 1]) - step) > 1e-9 * std::max(1.0, step))
            throw UsageError("asymptotic_ray_check: T values must increase in |T| with equal spacing");
    }
    AsymptoticRay r;
    for (double t : ts) {
        const double growth = (a + 1.0) * std::abs(t);
        if (growth > 700.0)
            throw NumericalError("asymptotic_ray_check: e^{(a+1)|T|} overflows; reduce T");
        r.ts.push_back(t);
        r.scaled.push_back(std::exp(-growth) * bent_helicoid_closed(a, cplx(x, t)));
    }

    // Richardson in e^{-|T|} (vertical component) then e^{-2|T|} (horizontal).
    auto eliminate = [](const std::vector<Vec3>& seq, double ratio) {
        std::vector<Vec3> out;
        for (std::size_t j = 0; j + 1 < seq.size(); ++j)
            out.push_back((seq[j + 1] - ratio * seq[j]) / (1.0 - ratio));
        return out;
    };
    const auto level1 = eliminate(r.scaled, std::exp(-step));
    const auto level2 = eliminate(level1, std::exp(-2.0 * step));
    r.extrapolated = level2.back();

    const std::size_t m = r.scaled.size();
    const double d1 = (r.scaled[m - 1] - r.scaled[m - 2]).norm();
    const double d0 = (r.scaled[m - 2] - r.scaled[m - 3]).norm();
    r.rate = (d1 > 0.0 && d0 > 0.0) ? -std::log(d1 / d0) / step : 0.0;

    const double theta = (a + 1.0) * x;
    const Vec3 dir(-std::sin(theta), std::cos(theta), 0.0);
    if (sign > 0.0) {
        r.predicted = dir / (4.0 * (a + 1.0));
        r.printed = r.predicted;
    } else {
        r.predicted = -dir / (4.0 * (a + 1.0));
        r.printed = -dir / (4.0 * (a - 1.0));
    }
    r.error_predicted = (r.extrapolated - r.predicted).norm();
    r.error_printed = (r.extrapolated - r.printed).norm();
    r.measured_constant = std::hypot(r.extrapolated(0), r.extrapolated(1));
    return r;
}

namespace {

double turning_angle(const Vec3& u, const Vec3& v)
{
    return std::atan2(u.cross(v).norm(), u.dot(v));
}

// Tangent at the first point of pts[0..4] from a quadratic least-squares fit
// in the sample index.
Vec3 one_sided_tangent(const std::vector<Vec3>& pts, bool at_end)
{
    const int m = 5;
    Eigen::Matrix<double, 5, 3> a;
    Eigen::Matrix<double, 5, 3> rhs;
    for (int i = 0; i < m; ++i) {
        const double s = at_end ? -static_cast<double>(i) : static_cast<double>(i);
        const Vec3& p = at_end ? pts[pts.size() - 1 - static_cast<std::size_t>(i)] : pts[static_cast<std::size_t>(i)];
        a(i, 0) = 1.0;
        a(i, 1) = s;
        a(i, 2) = s * s;
        rhs.row(i) = p.transpose();
    }
    const Eigen::Matrix3d coef = a.colPivHouseholderQr().solve(rhs);
    Vec3 v = coef.row(1).transpose();
    return v.normalized();
}

double polyline_turning(const std::vector<Vec3>& pts)
{
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i)
        total += turning_angle(pts[i] - pts[i - 1], pts[i + 1] - pts[i]);
    return total;
}

} // namespace

BoundaryCurvature boundary_total_curvature(double a, double T, int samples_per_arc)
{
    if (!(a > 2.0))
        throw UsageError("boundary_total_curvature: requires a > 2");
    if (!(T >= 0.1))
        throw UsageError("boundary_total_curvature: T below the minimum 0.1 degenerates the loop");
    if (samples_per_arc < 10)
        throw UsageError("boundary_total_curvature: too few samples");
    const double half = kPi / (2.0 * a);
    const int m = samples_per_arc;
    std::array<std::vector<Vec3>, 4> arcs;
    for (int i = 0; i <= m; ++i) {
        const double s = static_cast<double>(i) / m;
        const double x = -half + 2.0 * half * s;
        arcs[0].push_back(bent_helicoid_closed(a, cplx(x, 0.0)));        // circular arc
        arcs[1].push_back(bent_helicoid_closed(a, cplx(half, T * s)));   // ray at +pi/2a
        arcs[2].push_back(bent_helicoid_closed(a, cplx(-x, T)));         // top arc
        arcs[3].push_back(bent_helicoid_closed(a, cplx(-half, T * (1.0 - s)))); // ray at -pi/2a
    }
    BoundaryCurvature r;
    for (int k = 0; k < 4; ++k) {
        r.arc_curvature[static_cast<std::size_t>(k)] = polyline_turning(arcs[static_cast<std::size_t>(k)]);
        const Vec3 in = one_sided_tangent(arcs[static_cast<std::size_t>(k)], true);
        const Vec3 out = one_sided_tangent(arcs[static_cast<std::size_t>((k + 1) % 4)], false);
        // one_sided_tangent at an end returns the backward direction.
        const double c = (-in).dot(out);
        if (std::abs(c) > 1.0 - 1e-10)
            throw NumericalError("boundary_total_curvature: adjacent tangents are parallel at a corner");
        r.corner_angle[static_cast<std::size_t>(k)] = turning_angle(-in, out);
        r.arcs += r.arc_curvature[static_cast<std::size_t>(k)];
        r.corners += r.corner_angle[static_cast<std::size_t>(k)];
    }
    r.total = r.arcs + r.corners;
    r.asymptotic = 2.0 * kPi / a + 3.0 * kPi;
    return r;
}

} // namespace bhlab
