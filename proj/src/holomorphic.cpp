#include "bhlab/holomorphic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <Eigen/Dense>

namespace bhlab {

HolomorphicCurve HolomorphicCurve::trig(std::vector<CVec3> coeffs, double frequency)
{
    if (coeffs.empty() || coeffs.size() % 2 == 0)
        throw UsageError("trig curve needs 2K+1 coefficients");
    if (!(frequency > 0.0) || !std::isfinite(frequency))
        throw UsageError("trig curve frequency must be positive");
    HolomorphicCurve c;
    c.basis_ = Basis::Trig;
    c.degree_ = static_cast<int>(coeffs.size() / 2);
    c.frequency_ = frequency;
    c.coeffs_ = std::move(coeffs);
    return c;
}

HolomorphicCurve HolomorphicCurve::taylor(std::vector<CVec3> coeffs, double center, double scale)
{
    if (coeffs.empty())
        throw UsageError("taylor curve needs at least one coefficient");
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(center))
        throw UsageError("taylor curve needs finite center and positive scale");
    HolomorphicCurve c;
    c.basis_ = Basis::Taylor;
    c.degree_ = static_cast<int>(coeffs.size()) - 1;
    c.center_ = center;
    c.scale_ = scale;
    c.coeffs_ = std::move(coeffs);
    return c;
}

HolomorphicCurve HolomorphicCurve::constant(const Vec3& value)
{
    return taylor({value.cast<cplx>()});
}

const CVec3& HolomorphicCurve::coeff(int k) const
{
    if (basis_ == Basis::Trig) {
        if (k < -degree_ || k > degree_)
            throw UsageError("trig coefficient index out of range");
        return coeffs_[static_cast<std::size_t>(k + degree_)];
    }
    if (k < 0 || k > degree_)
        throw UsageError("taylor coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(k)];
}

double HolomorphicCurve::period() const
{
    return basis_ == Basis::Trig ? 2.0 * kPi / frequency_ : 0.0;
}

CVec3 HolomorphicCurve::operator()(cplx z, int deriv_order) const
{
    CVec3 sum = CVec3::Zero();
    if (basis_ == Basis::Trig) {
        const cplx q = std::exp(kI * frequency_ * z);
        const cplx qinv = std::exp(-kI * frequency_ * z);
        sum = coeffs_[static_cast<std::size_t>(degree_)] * (deriv_order == 0 ? cplx(1.0) : cplx(0.0));
        cplx qp = 1.0, qn = 1.0;
        for (int k = 1; k <= degree_; ++k) {
            qp *= q;
            qn *= qinv;
            const cplx fp = std::pow(kI * frequency_ * static_cast<double>(k), deriv_order);
            const cplx fn = std::pow(-kI * frequency_ * static_cast<double>(k), deriv_order);
            sum += coeffs_[static_cast<std::size_t>(degree_ + k)] * (fp * qp);
            sum += coeffs_[static_cast<std::size_t>(degree_ - k)] * (fn * qn);
        }
        return sum;
    }
    // Horner on the differentiated coefficients.
    const cplx u = (z - center_) / scale_;
    for (int k = degree_; k >= deriv_order; --k) {
        double falling = 1.0;
        for (int j = 0; j < deriv_order; ++j)
            falling *= static_cast<double>(k - j);
        sum = sum * u + coeffs_[static_cast<std::size_t>(k)] * falling;
    }
    return sum / std::pow(scale_, deriv_order);
}

HolomorphicCurve HolomorphicCurve::derivative() const
{
    if (basis_ == Basis::Trig) {
        std::vector<CVec3> d(coeffs_.size());
        for (int k = -degree_; k <= degree_; ++k)
            d[static_cast<std::size_t>(k + degree_)] = coeffs_[static_cast<std::size_t>(k + degree_)] *
                                                       (kI * frequency_ * static_cast<double>(k));
        return trig(std::move(d), frequency_);
    }
    if (degree_ == 0)
        return taylor({CVec3::Zero()}, center_, scale_);
    std::vector<CVec3> d(static_cast<std::size_t>(degree_));
    for (int k = 1; k <= degree_; ++k)
        d[static_cast<std::size_t>(k - 1)] = coeffs_[static_cast<std::size_t>(k)] * (static_cast<double>(k) / scale_);
    return taylor(std::move(d), center_, scale_);
}

CVec3 eval_holo(const HolomorphicCurve& curve, ComplexPoint z, int deriv_order)
{
    if (deriv_order < 0 || deriv_order > 2)
        throw UsageError("eval_holo: deriv_order must be 0, 1 or 2, got " + std::to_string(deriv_order));
    require_finite(z, "eval_holo");
    return curve(z, deriv_order);
}

ContourSpec ContourSpec::segment(ComplexPoint from, ComplexPoint to, int order, double max_piece)
{
    ContourSpec c;
    c.z0 = from;
    c.z1 = to;
    c.order = order;
    c.subdivisions = std::max(1, static_cast<int>(std::ceil(std::abs(to - from) / max_piece)));
    return c;
}

void ContourSpec::validate() const
{
    if (order < 2)
        throw UsageError("contour quadrature order must be >= 2");
    if (subdivisions < 1)
        throw UsageError("contour subdivision count must be >= 1");
    require_finite(z0, "contour start");
    require_finite(z1, "contour end");
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order)
{
    static std::mutex mutex;
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it != cache.end())
        return it->second;

    const int n = order;
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double r = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = r;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * r * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (r * p1 - p0) / (r * r - 1.0);
            const double step = p1 / dp;
            r -= step;
            if (std::abs(step) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged root for the weight.
        double p0 = 1.0, p1 = r;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * r * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (r * p1 - p0) / (r * r - 1.0);
        const double wi = 2.0 / ((1.0 - r * r) * dp * dp);
        x[static_cast<std::size_t>(i)] = -r;
        x[static_cast<std::size_t>(n - 1 - i)] = r;
        w[static_cast<std::size_t>(i)] = wi;
        w[static_cast<std::size_t>(n - 1 - i)] = wi;
    }
    return cache.emplace(order, std::make_pair(std::move(x), std::move(w))).first->second;
}

CVec3 contour_integral(const HoloIntegrand& integrand, const ContourSpec& contour)
{
    contour.validate();
    CVec3 total = CVec3::Zero();
    const cplx delta = contour.z1 - contour.z0;
    if (delta == cplx(0.0, 0.0))
        return total;
    const auto& [nodes, weights] = gauss_legendre(contour.order);
    const cplx h = delta / static_cast<double>(contour.subdivisions);
    for (int s = 0; s < contour.subdivisions; ++s) {
        const cplx mid = contour.z0 + (static_cast<double>(s) + 0.5) * h;
        CVec3 piece = CVec3::Zero();
        for (std::size_t j = 0; j < nodes.size(); ++j)
            piece += weights[j] * integrand(mid + 0.5 * h * nodes[j]);
        total += piece * (0.5 * h);
    }
    return total;
}

CVec3 contour_integral(const HolomorphicCurve& curve, const ContourSpec& contour)
{
    return contour_integral([&curve](cplx w) { return curve(w); }, contour);
}

namespace {

std::string column_name_trig(Eigen::Index col)
{
    if (col == 0)
        return "frequency k=0 (constant)";
    const auto k = (col + 1) / 2;
    return "frequency k=" + std::to_string(k) + (col % 2 == 1 ? " (cos)" : " (sin)");
}

template <class NameFn>
Eigen::MatrixXd solve_least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& rhs, NameFn name_of)
{
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < a.cols()) {
        std::ostringstream msg;
        msg << "rank-deficient normal equations: ";
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index j = qr.rank(); j < a.cols(); ++j) {
            if (j > qr.rank())
                msg << ", ";
            msg << name_of(perm(j));
        }
        msg << " not determined by the samples";
        throw NumericalError(msg.str());
    }
    return qr.solve(rhs);
}

} // namespace

HolomorphicCurve fit_trig_poly(std::span<const CurveSample> samples, int degree, double frequency)
{
    if (degree < 0)
        throw UsageError("fit_trig_poly: degree must be >= 0");
    if (!(frequency > 0.0))
        throw UsageError("fit_trig_poly: frequency must be positive");
    const auto cols = static_cast<Eigen::Index>(2 * degree + 1);
    if (static_cast<Eigen::Index>(samples.size()) < cols)
        throw UsageError("fit_trig_poly: need at least 2K+1 = " + std::to_string(cols) + " samples, got " +
                         std::to_string(samples.size()));
    const double period = 2.0 * kPi / frequency;
    const auto rows = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd a(rows, cols), rhs(rows, 3);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        if (!(s.t >= -1e-12 && s.t < period + 1e-12))
            throw UsageError("fit_trig_poly: sample parameter outside [0, period)");
        a(i, 0) = 1.0;
        for (int k = 1; k <= degree; ++k) {
            a(i, 2 * k - 1) = std::cos(k * frequency * s.t);
            a(i, 2 * k) = std::sin(k * frequency * s.t);
        }
        rhs.row(i) = s.p.transpose();
    }
    const Eigen::MatrixXd x = solve_least_squares(a, rhs, column_name_trig);

    std::vector<CVec3> coeffs(static_cast<std::size_t>(cols));
    coeffs[static_cast<std::size_t>(degree)] = x.row(0).transpose().cast<cplx>();
    for (int k = 1; k <= degree; ++k) {
        const Vec3 ck = x.row(2 * k - 1).transpose();
        const Vec3 sk = x.row(2 * k).transpose();
        coeffs[static_cast<std::size_t>(degree + k)] = (ck.cast<cplx>() - kI * sk.cast<cplx>()) * 0.5;
        coeffs[static_cast<std::size_t>(degree - k)] = (ck.cast<cplx>() + kI * sk.cast<cplx>()) * 0.5;
    }
    return HolomorphicCurve::trig(std::move(coeffs), frequency);
}

HolomorphicCurve fit_taylor_poly(std::span<const CurveSample> samples, int degree, double center, double scale)
{
    if (degree < 0)
        throw UsageError("fit_taylor_poly: degree must be >= 0");
    const auto cols = static_cast<Eigen::Index>(degree + 1);
    if (static_cast<Eigen::Index>(samples.size()) < cols)
        throw UsageError("fit_taylor_poly: need at least K+1 samples");
    const auto rows = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd a(rows, cols), rhs(rows, 3);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        const double u = (s.t - center) / scale;
        double p = 1.0;
        for (Eigen::Index k = 0; k < cols; ++k) {
            a(i, k) = p;
            p *= u;
        }
        rhs.row(i) = s.p.transpose();
    }
    const Eigen::MatrixXd x =
        solve_least_squares(a, rhs, [](Eigen::Index col) { return "power k=" + std::to_string(col); });
    std::vector<CVec3> coeffs(static_cast<std::size_t>(cols));
    for (Eigen::Index k = 0; k < cols; ++k)
        coeffs[static_cast<std::size_t>(k)] = x.row(k).transpose().cast<cplx>();
    return HolomorphicCurve::taylor(std::move(coeffs), center, scale);
}

double max_sample_residual(const HolomorphicCurve& curve, std::span<const CurveSample> samples)
{
    double worst = 0.0;
    for (const auto& s : samples)
        worst = std::max(worst, (curve.real_at(s.t) - s.p).norm());
    return worst;
}

} // namespace bhlab
