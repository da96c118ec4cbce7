#include "bhlab/bjorling.hpp"

#include <cmath>
#include <sstream>

namespace bhlab {

std::vector<double> real_check_grid(const HolomorphicCurve& core, int count)
{
    std::vector<double> ts(static_cast<std::size_t>(count));
    if (core.basis() == Basis::Trig) {
        const double period = core.period();
        for (int i = 0; i < count; ++i)
            ts[static_cast<std::size_t>(i)] = period * i / count;
    } else {
        for (int i = 0; i < count; ++i)
            ts[static_cast<std::size_t>(i)] = core.center() + core.scale() * (-1.0 + 2.0 * i / (count - 1));
    }
    return ts;
}

FrameResidual frame_residual(const HolomorphicCurve& core, const FrameField& frame, std::span<const double> ts)
{
    FrameResidual r;
    for (double t : ts) {
        const Vec3 v = core.real_at(t, 1);
        const Vec3 n1 = frame.n1.real_at(t);
        const Vec3 n2 = frame.n2.real_at(t);
        r.speed = std::max(r.speed, std::abs(v.norm() - 1.0));
        r.unit = std::max({r.unit, std::abs(n1.norm() - 1.0), std::abs(n2.norm() - 1.0)});
        r.orthogonal = std::max({r.orthogonal, std::abs(n1.dot(v)), std::abs(n2.dot(v)), std::abs(n1.dot(n2))});
        r.handed = std::max(r.handed, (n2 - v.cross(n1)).norm());
    }
    return r;
}

BjorlingSpec::BjorlingSpec(HolomorphicCurve core, FrameField frame, double spin, double tolerance)
    : core_(std::move(core)), velocity_(core_.derivative()), frame_(std::move(frame)), spin_(spin)
{
    if (!std::isfinite(spin) || spin < 0.0)
        throw UsageError("Björling spin must be finite and non-negative");
    const auto ts = real_check_grid(core_);
    const FrameResidual r = frame_residual(core_, frame_, ts);
    if (r.speed > tolerance) {
        std::ostringstream msg;
        msg << "Björling core is not unit speed: max ||c'|-1| = " << r.speed;
        throw UsageError(msg.str());
    }
    if (r.unit > tolerance || r.orthogonal > tolerance || r.handed > tolerance) {
        std::ostringstream msg;
        msg << "Björling frame is not orthonormal/right-handed: unit " << r.unit << ", orthogonal " << r.orthogonal
            << ", handed " << r.handed;
        throw UsageError(msg.str());
    }
}

BjorlingSpec BjorlingSpec::circle(double spin)
{
    // c = (cos z, sin z, 0) = (e^{iz} + e^{-iz})/2 e1 + (e^{iz} - e^{-iz})/(2i) e2
    std::vector<CVec3> c(3, CVec3::Zero());
    c[2] = CVec3(0.5, -0.5 * kI, 0.0);
    c[0] = CVec3(0.5, 0.5 * kI, 0.0);
    std::vector<CVec3> n1(3, CVec3::Zero());
    n1[2] = -c[2];
    n1[0] = -c[0];
    auto core = HolomorphicCurve::trig(std::move(c));
    FrameField frame{HolomorphicCurve::trig(std::move(n1)), HolomorphicCurve::constant(Vec3(0, 0, 1))};
    return BjorlingSpec(std::move(core), std::move(frame), spin);
}

BjorlingSpec BjorlingSpec::helicoid(double spin)
{
    auto core = HolomorphicCurve::taylor({CVec3::Zero(), CVec3(1.0, 0.0, 0.0)});
    FrameField frame{HolomorphicCurve::constant(Vec3(0, -1, 0)), HolomorphicCurve::constant(Vec3(0, 0, -1))};
    return BjorlingSpec(std::move(core), std::move(frame), spin);
}

BjorlingSpec BjorlingSpec::with_spin(double spin) const
{
    BjorlingSpec copy = *this;
    if (!std::isfinite(spin) || spin < 0.0)
        throw UsageError("Björling spin must be finite and non-negative");
    copy.spin_ = spin;
    return copy;
}

CVec3 spinning_normal(const BjorlingSpec& spec, ComplexPoint z)
{
    const double a = spec.spin();
    return std::cos(a * z) * spec.frame().n1(z) + std::sin(a * z) * spec.frame().n2(z);
}

CVec3 spinning_normal_derivative(const BjorlingSpec& spec, ComplexPoint z)
{
    const double a = spec.spin();
    const cplx ca = std::cos(a * z), sa = std::sin(a * z);
    const auto& f = spec.frame();
    return ca * (f.n1(z, 1) + a * f.n2(z)) + sa * (f.n2(z, 1) - a * f.n1(z));
}

namespace {

CVec3 bjorling_integrand(const BjorlingSpec& spec, cplx w)
{
    return bcross(spinning_normal(spec, w), spec.core_velocity()(w));
}

} // namespace

Vec3 bjorling_immersion(const BjorlingSpec& spec, ComplexPoint z, int order, double max_piece)
{
    require_finite(z, "bjorling_immersion");
    // The integral along the real axis is real, so Re(-i int_0^x) vanishes and
    // the vertical segment x -> z carries the whole contribution.
    const cplx x(z.real(), 0.0);
    const CVec3 integral =
        contour_integral([&spec](cplx w) { return bjorling_integrand(spec, w); },
                         ContourSpec::segment(x, z, order, max_piece));
    return spec.core()(z).real() + integral.imag();
}

Vec3 bent_helicoid_closed(double a, ComplexPoint z)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw UsageError("bent_helicoid_closed: spin must be positive");
    if (std::abs(a * a - 1.0) < 1e-12)
        throw UsageError("bent_helicoid_closed: a = 1 makes a^2 - 1 vanish; use the numeric evaluator");
    require_finite(z, "bent_helicoid_closed");
    const cplx cz = std::cos(z), sz = std::sin(z), caz = std::cos(a * z), saz = std::sin(a * z);
    const double den = a * a - 1.0;
    const cplx f1 = cz - kI * (cz * caz * a - a + sz * saz) / den;
    const cplx f2 = sz - kI * (a * caz * sz - cz * saz) / den;
    const cplx f3 = kI * saz / a;
    return Vec3(f1.real(), f2.real(), f3.real());
}

CVec3 bent_helicoid_closed_derivative(double a, ComplexPoint z)
{
    const cplx cz = std::cos(z), sz = std::sin(z), caz = std::cos(a * z), saz = std::sin(a * z);
    return CVec3(kI * cz * saz - sz, cz + kI * sz * saz, kI * caz);
}

WeierstrassData weierstrass_eval(int n, ComplexPoint w)
{
    if (n < 0)
        throw UsageError("weierstrass_eval: n must be >= 0");
    require_finite(w, "weierstrass_eval");
    if (w == cplx(0.0, 0.0))
        throw UsageError("weierstrass_eval: w = 0 is a puncture of the parameter domain");
    const cplx wn = std::pow(w, n);
    WeierstrassData d;
    d.gauss = -w * (wn + kI) / (kI * wn + 1.0);
    d.dh = (wn + 1.0 / wn) / (2.0 * w);
    return d;
}

CVec3 weierstrass_integrand_z(int n, ComplexPoint z)
{
    // With w = e^{iz} and S = w^n + w^-n:
    //   G S   = i w^{1-n} (w^n + i)^2,   S / G = -i w^{-n-1} (w^n - i)^2,
    // and dh = (i/2) S dz.
    const cplx w = std::exp(kI * z);
    const cplx wn = std::exp(kI * static_cast<double>(n) * z);
    const cplx s = wn + 1.0 / wn;
    const cplx gs = kI * (w / wn) * (wn + kI) * (wn + kI);
    const cplx sg = -kI / (wn * w) * (wn - kI) * (wn - kI);
    const cplx half_i = 0.5 * kI;
    return CVec3(half_i * 0.5 * (sg - gs), half_i * 0.5 * kI * (sg + gs), half_i * s);
}

struct SurfaceEvaluator::Impl {
    virtual ~Impl() = default;
    virtual SurfaceKind kind() const = 0;
    virtual double spin() const = 0;
    virtual const BjorlingSpec* spec() const { return nullptr; }
    virtual Vec3 translation() const { return Vec3::Zero(); }
    virtual Vec3 position(cplx z) const = 0;
    virtual CVec3 derivative(cplx z) const = 0;
};

namespace {

struct NumericImpl final : SurfaceEvaluator::Impl {
    BjorlingSpec data;
    int order;
    double max_piece;
    NumericImpl(BjorlingSpec s, int o, double m) : data(std::move(s)), order(o), max_piece(m) {}
    SurfaceKind kind() const override { return SurfaceKind::Numeric; }
    double spin() const override { return data.spin(); }
    const BjorlingSpec* spec() const override { return &data; }
    Vec3 position(cplx z) const override { return bjorling_immersion(data, z, order, max_piece); }
    CVec3 derivative(cplx z) const override
    {
        const CVec3 v = data.core_velocity()(z);
        return v - kI * bcross(spinning_normal(data, z), v);
    }
};

struct ClosedImpl final : SurfaceEvaluator::Impl {
    double a;
    explicit ClosedImpl(double spin) : a(spin) {}
    SurfaceKind kind() const override { return SurfaceKind::ClosedCircle; }
    double spin() const override { return a; }
    Vec3 position(cplx z) const override { return bent_helicoid_closed(a, z); }
    CVec3 derivative(cplx z) const override { return bent_helicoid_closed_derivative(a, z); }
};

struct WeierstrassImpl final : SurfaceEvaluator::Impl {
    int n;
    explicit WeierstrassImpl(int order) : n(order) {}
    SurfaceKind kind() const override { return SurfaceKind::Weierstrass; }
    double spin() const override { return n; }
    // F(0) = c(0) = (1, 0, 0) fixes the additive constant of the integral.
    Vec3 translation() const override { return Vec3(1.0, 0.0, 0.0); }
    Vec3 position(cplx z) const override
    {
        const CVec3 integral = contour_integral([this](cplx w) { return weierstrass_integrand_z(n, w); },
                                                ContourSpec::segment(cplx(0.0, 0.0), z));
        return translation() + integral.real();
    }
    CVec3 derivative(cplx z) const override { return weierstrass_integrand_z(n, z); }
};

} // namespace

SurfaceEvaluator SurfaceEvaluator::numeric(BjorlingSpec spec, int order, double max_piece)
{
    if (order < 2 || !(max_piece > 0.0))
        throw UsageError("numeric evaluator: invalid quadrature settings");
    return SurfaceEvaluator(std::make_shared<NumericImpl>(std::move(spec), order, max_piece));
}

SurfaceEvaluator SurfaceEvaluator::closed_circle(double a)
{
    bent_helicoid_closed(a, cplx(0.0, 0.0)); // validates a
    return SurfaceEvaluator(std::make_shared<ClosedImpl>(a));
}

SurfaceEvaluator SurfaceEvaluator::weierstrass(int n)
{
    if (n < 0)
        throw UsageError("weierstrass evaluator: n must be >= 0");
    return SurfaceEvaluator(std::make_shared<WeierstrassImpl>(n));
}

SurfaceKind SurfaceEvaluator::kind() const { return impl_->kind(); }
double SurfaceEvaluator::spin() const { return impl_->spin(); }
const BjorlingSpec* SurfaceEvaluator::spec() const { return impl_->spec(); }
Vec3 SurfaceEvaluator::translation() const { return impl_->translation(); }
Vec3 SurfaceEvaluator::position(ComplexPoint z) const { return impl_->position(z); }
CVec3 SurfaceEvaluator::holo_derivative(ComplexPoint z) const { return impl_->derivative(z); }

Vec3 SurfaceEvaluator::unit_normal(ComplexPoint z) const
{
    const CVec3 d = holo_derivative(z);
    const Vec3 n = d.real().cross(Vec3(-d.imag()));
    const double len = n.norm();
    if (!(len > 0.0))
        throw NumericalError("unit_normal: degenerate tangent plane");
    return n / len;
}

SymmetryElement SymmetryElement::identity() { return {}; }

SymmetryElement SymmetryElement::translation_2pi(double spin)
{
    SymmetryElement s;
    s.kind = SymmetryKind::Translation2Pi;
    s.spin = spin;
    s.shift = cplx(2.0 * kPi, 0.0);
    return s;
}

SymmetryElement SymmetryElement::axis_rotation(double spin, int power)
{
    if (!(spin > 0.0))
        throw UsageError("axis_rotation: spin must be positive");
    SymmetryElement s;
    s.kind = SymmetryKind::AxisRotation;
    s.spin = spin;
    s.index = power;
    const double angle = power * kPi / spin;
    s.rotation = Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix();
    s.anti_holomorphic = (power % 2) != 0;
    s.shift = cplx(angle, 0.0);
    return s;
}

SymmetryElement SymmetryElement::line_rotation_180(double spin, int k)
{
    if (!(spin > 0.0))
        throw UsageError("line_rotation_180: spin must be positive");
    SymmetryElement s;
    s.kind = SymmetryKind::LineRotation180;
    s.spin = spin;
    s.index = k;
    const double tk = k * kPi / spin;
    const Vec3 u(std::cos(tk), std::sin(tk), 0.0);
    s.rotation = 2.0 * u * u.transpose() - Mat3::Identity();
    s.scale = -1.0;
    s.shift = cplx(2.0 * tk, 0.0);
    return s;
}

double symmetry_residual(const SurfaceEvaluator& surface, const SymmetryElement& sym, std::span<const cplx> grid)
{
    if (surface.kind() == SurfaceKind::Numeric)
        throw UsageError("symmetry_residual: surface must be the closed form or the Weierstrass evaluator");
    if (sym.kind != SymmetryKind::Identity && std::abs(sym.spin - surface.spin()) > 1e-12)
        throw UsageError("symmetry_residual: spin of the symmetry does not match the surface");
    if (sym.kind == SymmetryKind::Translation2Pi && std::abs(sym.spin - std::round(sym.spin)) > 1e-12)
        throw UsageError("symmetry_residual: 2pi translation needs an integer spin");
    double worst = 0.0;
    for (cplx z : grid)
        worst = std::max(worst, (sym.apply(surface.position(z)) - surface.position(sym.apply_param(z))).norm());
    return worst;
}

double weierstrass_consistency(int n, std::span<const cplx> grid)
{
    if (n < 2)
        throw UsageError("weierstrass_consistency: n must be >= 2");
    if (grid.empty())
        return 0.0;
    const auto w_surface = SurfaceEvaluator::weierstrass(n);
    for (cplx z : grid) {
        const cplx wn = std::exp(kI * static_cast<double>(n) * z);
        if (std::abs(kI * wn + 1.0) < 1e-12)
            throw UsageError("weierstrass_consistency: grid point on a pole of G");
    }
    const Vec3 offset = w_surface.position(grid[0]) - bent_helicoid_closed(n, grid[0]);
    double worst = 0.0;
    for (cplx z : grid)
        worst = std::max(worst, (w_surface.position(z) - offset - bent_helicoid_closed(n, z)).norm());
    return worst;
}

} // namespace bhlab
