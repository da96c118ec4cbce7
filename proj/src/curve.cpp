#include "bhlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "bhlab/holomorphic.hpp"

namespace bhlab {

namespace {

double turning(const Vec3& u, const Vec3& v)
{
    return std::atan2(u.cross(v).norm(), u.dot(v));
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

double SampledCurve::segment_length(std::size_t i) const
{
    const std::size_t j = (i + 1) % size();
    const double chord = (p[j] - p[i]).norm();
    const double half = 0.5 * turning(tangent[i], tangent[j]);
    if (half < 1e-8)
        return chord * (1.0 + half * half / 6.0);
    return chord * half / std::sin(half);
}

double SampledCurve::length() const
{
    double total = 0.0;
    const std::size_t segments = closed ? size() : size() - 1;
    for (std::size_t i = 0; i < segments; ++i)
        total += segment_length(i);
    return total;
}

SampledCurve make_sampled_curve(std::vector<double> t, std::vector<Vec3> p, bool closed, double period,
                                std::vector<Vec3> tangents)
{
    if (t.size() != p.size())
        throw UsageError("curve: t and p sizes differ");
    const std::size_t n = t.size();
    if (n < 4)
        throw UsageError("curve: need at least 4 samples");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(t[i]) || !p[i].allFinite())
            throw UsageError("curve: non-finite sample at index " + std::to_string(i));
        if (i > 0 && !(t[i] > t[i - 1]))
            throw UsageError("curve: t is not strictly increasing at index " + std::to_string(i));
        if (i > 0 && (p[i] - p[i - 1]).norm() <= 1e-14 * (1.0 + p[i].norm()))
            throw UsageError("curve: duplicate point at index " + std::to_string(i));
    }
    if (closed && !(period > t.back() - t.front()))
        throw UsageError("curve: closed curve needs period > t span");

    SampledCurve c;
    c.closed = closed;
    c.period = closed ? period : t.back() - t.front();
    c.t = std::move(t);
    c.p = std::move(p);

    if (!tangents.empty()) {
        if (tangents.size() != n)
            throw UsageError("curve: tangent count differs from sample count");
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(tangents[i].norm() - 1.0) > 1e-6)
                throw UsageError("curve: tangent at index " + std::to_string(i) + " is not unit length");
        c.tangent = std::move(tangents);
        c.input_tangents = true;
    } else {
        c.tangent.resize(n);
        auto neighbour = [&c, n](long k, double& tk) -> const Vec3& {
            // periodic index for closed curves
            long m = static_cast<long>(n);
            long j = ((k % m) + m) % m;
            tk = c.t[static_cast<std::size_t>(j)] + c.period * static_cast<double>((k - j) / m);
            return c.p[static_cast<std::size_t>(j)];
        };
        for (std::size_t i = 0; i < n; ++i) {
            Vec3 d;
            if (c.closed || (i > 0 && i + 1 < n)) {
                double tm, tp;
                const Vec3& pm = neighbour(static_cast<long>(i) - 1, tm);
                const Vec3& pp = neighbour(static_cast<long>(i) + 1, tp);
                const double hm = c.t[i] - tm, hp = tp - c.t[i];
                d = (hm * hm * (pp - c.p[i]) + hp * hp * (c.p[i] - pm)) / (hm * hp * (hm + hp));
            } else if (i == 0) {
                const double h1 = c.t[1] - c.t[0], h2 = c.t[2] - c.t[0];
                d = (-(h1 + h2) / (h1 * h2)) * c.p[0] + (h2 / (h1 * (h2 - h1))) * c.p[1] -
                    (h1 / (h2 * (h2 - h1))) * c.p[2];
            } else {
                const double h1 = c.t[n - 1] - c.t[n - 2], h2 = c.t[n - 1] - c.t[n - 3];
                d = ((h1 + h2) / (h1 * h2)) * c.p[n - 1] - (h2 / (h1 * (h2 - h1))) * c.p[n - 2] +
                    (h1 / (h2 * (h2 - h1))) * c.p[n - 3];
            }
            const double len = d.norm();
            if (!(len > 0.0))
                throw UsageError("curve: zero tangent at index " + std::to_string(i));
            c.tangent[i] = d / len;
        }
    }

    const std::size_t segments = c.closed ? n : n - 1;
    for (std::size_t i = 0; i < segments; ++i) {
        const std::size_t j = (i + 1) % n;
        c.kappa_hat = std::max(c.kappa_hat, (c.tangent[j] - c.tangent[i]).norm() / (c.p[j] - c.p[i]).norm());
    }
    return c;
}

SampledCurve parse_polyline(const std::string& text, const std::string& origin)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<double> t;
    std::vector<Vec3> p, tan;
    bool header_seen = false;
    int columns = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ','))
            fields.push_back(trim(f));
        if (!header_seen && t.empty() && !fields.empty() && fields[0] == "t") {
            if (fields.size() != 4 && fields.size() != 7)
                throw UsageError(origin + ":" + std::to_string(lineno) + ": header must be t,x,y,z[,tx,ty,tz]");
            header_seen = true;
            continue;
        }
        if (fields.size() != 4 && fields.size() != 7)
            throw UsageError(origin + ":" + std::to_string(lineno) + ": expected 4 or 7 fields, got " +
                             std::to_string(fields.size()));
        if (columns == 0)
            columns = static_cast<int>(fields.size());
        else if (columns != static_cast<int>(fields.size()))
            throw UsageError(origin + ":" + std::to_string(lineno) + ": inconsistent column count");
        double v[7];
        for (std::size_t k = 0; k < fields.size(); ++k) {
            try {
                std::size_t used = 0;
                v[k] = std::stod(fields[k], &used);
                if (used != fields[k].size())
                    throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw UsageError(origin + ":" + std::to_string(lineno) + ": malformed number '" + fields[k] + "'");
            }
        }
        if (!t.empty() && !(v[0] > t.back()))
            throw UsageError(origin + ":" + std::to_string(lineno) + ": t is not strictly increasing");
        t.push_back(v[0]);
        p.emplace_back(v[1], v[2], v[3]);
        if (columns == 7)
            tan.emplace_back(v[4], v[5], v[6]);
    }
    bool closed = false;
    double period = 0.0;
    if (t.size() > 4 && (p.back() - p.front()).norm() <= 1e-12 * (1.0 + p.front().norm())) {
        closed = true;
        period = t.back() - t.front();
        t.pop_back();
        p.pop_back();
        if (!tan.empty())
            tan.pop_back();
    }
    return make_sampled_curve(std::move(t), std::move(p), closed, period, std::move(tan));
}

SampledCurve ingest_polyline(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open curve file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_polyline(buf.str(), path);
}

void write_polyline(const std::string& path, const SampledCurve& curve)
{
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr)
        throw UsageError("cannot write '" + path + "'");
    std::fprintf(f, "# %s curve, %zu samples\n", curve.closed ? "closed" : "open", curve.size());
    std::fprintf(f, "t,x,y,z,tx,ty,tz\n");
    auto row = [f](double t, const Vec3& p, const Vec3& d) {
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, p(0), p(1), p(2), d(0), d(1), d(2));
    };
    for (std::size_t i = 0; i < curve.size(); ++i)
        row(curve.t[i], curve.p[i], curve.tangent[i]);
    if (curve.closed)
        row(curve.t.front() + curve.period, curve.p.front(), curve.tangent.front());
    std::fclose(f);
}

double MollifierSpec::kernel(double u, int order) const
{
    const double r = u / h;
    if (std::abs(r) >= 1.0)
        return 0.0;
    const double q = 1.0 - r * r;
    switch (order) {
    case 0: return 15.0 / (16.0 * h) * q * q;
    case 1: return -15.0 / (4.0 * h * h) * r * q;
    case 2: return -15.0 / (4.0 * h * h * h) * (1.0 - 3.0 * r * r);
    default: throw UsageError("mollifier kernel: derivative order must be 0..2");
    }
}

double MollifierSpec::mass() const
{
    const auto& [x, w] = gauss_legendre(8);
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        m += w[i] * kernel(h * x[i]) * h;
    return m;
}

MollifiedCurve::MollifiedCurve(SampledCurve source, MollifierSpec spec) : source_(std::move(source)), spec_(spec)
{
    if (!(spec_.h > 0.0))
        throw UsageError("mollifier: h must be positive");
    const double span = source_.closed ? source_.period : source_.t.back() - source_.t.front();
    if (!(spec_.h < 0.25 * span))
        throw UsageError("mollifier: h must be smaller than a quarter of the parameter span");
}

double MollifiedCurve::t_min() const
{
    return source_.closed ? source_.t.front() : source_.t.front() + spec_.h;
}

double MollifiedCurve::t_max() const
{
    return source_.closed ? source_.t.front() + source_.period : source_.t.back() - spec_.h;
}

Vec3 MollifiedCurve::operator()(double t, int order) const
{
    const auto& s = source_;
    const double h = spec_.h;
    if (!s.closed && (t < t_min() - 1e-12 || t > t_max() + 1e-12))
        throw UsageError("mollified curve: t outside the shrunk window");
    // node list with the closing node appended for closed curves
    const std::size_t n = s.size();
    const std::size_t m = s.closed ? n + 1 : n;
    auto node_t = [&](std::size_t j) { return j < n ? s.t[j] : s.t.front() + s.period; };
    auto node_p = [&](std::size_t j) -> const Vec3& { return j < n ? s.p[j] : s.p.front(); };

    const auto& [gx, gw] = gauss_legendre(4);
    Vec3 acc = Vec3::Zero();
    const int kmax = s.closed ? 1 : 0;
    for (int k = -kmax; k <= kmax; ++k) {
        const double centre = t - k * s.period;
        const double lo = std::max(centre - h, node_t(0)), hi = std::min(centre + h, node_t(m - 1));
        if (!(hi > lo))
            continue;
        std::size_t j = static_cast<std::size_t>(
            std::upper_bound(s.t.begin(), s.t.end(), lo) - s.t.begin());
        j = j == 0 ? 0 : j - 1;
        for (; j + 1 < m && node_t(j) < hi; ++j) {
            const double a = std::max(lo, node_t(j)), b = std::min(hi, node_t(j + 1));
            if (!(b > a))
                continue;
            const double ta = node_t(j), tb = node_t(j + 1);
            const Vec3& pa = node_p(j);
            const Vec3& pb = node_p(j + 1);
            const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
            for (std::size_t q = 0; q < gx.size(); ++q) {
                const double u = mid + half * gx[q];
                const double w = (u - ta) / (tb - ta);
                acc += gw[q] * half * spec_.kernel(centre - u, order) * ((1.0 - w) * pa + w * pb);
            }
        }
    }
    return acc;
}

CurveFunction MollifiedCurve::function() const
{
    auto self = std::make_shared<MollifiedCurve>(*this);
    return [self](double t, int order) { return (*self)(t, order); };
}

double MollifiedCurve::curvature(double t) const
{
    const Vec3 d1 = (*this)(t, 1), d2 = (*this)(t, 2);
    const double sp = d1.norm();
    return d1.cross(d2).norm() / (sp * sp * sp);
}

double MollifiedCurve::max_curvature(int samples) const
{
    const double a = t_min(), b = t_max();
    double k = 0.0;
    const int last = source_.closed ? samples - 1 : samples;
    for (int i = 0; i <= last; ++i)
        k = std::max(k, curvature(a + (b - a) * i / samples));
    return k;
}

double MollifiedCurve::sup_distance() const
{
    double d = 0.0;
    for (std::size_t i = 0; i < source_.size(); ++i) {
        const double t = source_.t[i];
        if (t < t_min() || t > t_max())
            continue;
        d = std::max(d, ((*this)(t) - source_.p[i]).norm());
    }
    return d;
}

SampledCurve mollify(const SampledCurve& curve, const MollifierSpec& spec)
{
    const MollifiedCurve m(curve, spec);
    std::vector<double> t;
    std::vector<Vec3> p, tan;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double ti = curve.t[i];
        if (ti < m.t_min() || ti > m.t_max())
            continue;
        t.push_back(ti);
        p.push_back(m(ti));
        tan.push_back(m(ti, 1).normalized());
    }
    if (t.size() < 4)
        throw UsageError("mollify: window leaves fewer than 4 samples; reduce h");
    return make_sampled_curve(std::move(t), std::move(p), curve.closed, curve.period, std::move(tan));
}

SampledCurve arc_length_reparam(const SampledCurve& curve)
{
    const std::size_t n = curve.size();
    std::vector<double> t(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = s;
        if (i + 1 < n || curve.closed) {
            const std::size_t j = (i + 1) % n;
            const double dt = j == 0 ? curve.t.front() + curve.period - curve.t[i] : curve.t[j] - curve.t[i];
            const double ds = curve.segment_length(i);
            if (ds < 1e-6 * dt)
                throw UsageError("arc_length_reparam: near-stationary samples at index " + std::to_string(i));
            s += ds;
        }
    }
    return make_sampled_curve(std::move(t), curve.p, curve.closed, curve.closed ? s : 0.0, curve.tangent);
}

namespace {

double speed_integral(const CurveFunction& f, double a, double b)
{
    const auto& [x, w] = gauss_legendre(8);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += w[i] * f(mid + half * x[i], 1).norm();
    return acc * half;
}

} // namespace

double arc_length(const CurveFunction& f, double t0, double t1, int pieces)
{
    double total = 0.0;
    for (int i = 0; i < pieces; ++i)
        total += speed_integral(f, t0 + (t1 - t0) * i / pieces, t0 + (t1 - t0) * (i + 1) / pieces);
    return total;
}

SampledCurve arc_length_resample(const CurveFunction& f, double t0, double t1, int n, bool closed)
{
    if (n < 4 || !(t1 > t0))
        throw UsageError("arc_length_resample: need n >= 4 and t1 > t0");
    const int pieces = std::max(256, 2 * n);
    std::vector<double> cum(static_cast<std::size_t>(pieces) + 1, 0.0);
    const double dt = (t1 - t0) / pieces;
    for (int i = 0; i < pieces; ++i)
        cum[static_cast<std::size_t>(i) + 1] = cum[static_cast<std::size_t>(i)] + speed_integral(f, t0 + i * dt, t0 + (i + 1) * dt);
    const double length = cum.back();

    std::vector<double> s(static_cast<std::size_t>(n));
    std::vector<Vec3> p(static_cast<std::size_t>(n)), tan(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double target = length * j / (closed ? n : n - 1);
        auto it = std::upper_bound(cum.begin(), cum.end(), target);
        std::size_t piece = static_cast<std::size_t>(std::max<long>(0, (it - cum.begin()) - 1));
        piece = std::min(piece, static_cast<std::size_t>(pieces) - 1);
        const double base = t0 + static_cast<double>(piece) * dt;
        double t = base + dt * (target - cum[piece]) / (cum[piece + 1] - cum[piece]);
        for (int iter = 0; iter < 30; ++iter) {
            const double g = cum[piece] + speed_integral(f, base, t) - target;
            const double step = g / f(t, 1).norm();
            t = std::clamp(t - step, base, base + dt);
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(t)))
                break;
        }
        s[static_cast<std::size_t>(j)] = target;
        p[static_cast<std::size_t>(j)] = f(t, 0);
        tan[static_cast<std::size_t>(j)] = f(t, 1).normalized();
    }
    return make_sampled_curve(std::move(s), std::move(p), closed, closed ? length : 0.0, std::move(tan));
}

CurveFunction circle_function(double radius, double speed)
{
    const double w = speed / radius;
    return [radius, w](double t, int order) -> Vec3 {
        const double c = std::cos(w * t), s = std::sin(w * t);
        switch (order) {
        case 0: return radius * Vec3(c, s, 0.0);
        case 1: return radius * w * Vec3(-s, c, 0.0);
        default: return -radius * w * w * Vec3(c, s, 0.0);
        }
    };
}

CurveFunction ellipse_function(double ax, double by)
{
    return [ax, by](double t, int order) -> Vec3 {
        const double c = std::cos(t), s = std::sin(t);
        switch (order) {
        case 0: return Vec3(ax * c, by * s, 0.0);
        case 1: return Vec3(-ax * s, by * c, 0.0);
        default: return Vec3(-ax * c, -by * s, 0.0);
        }
    };
}

double stadium_length(double straight)
{
    return 2.0 * kPi + 2.0 * straight;
}

CurveFunction stadium_function(double straight)
{
    if (!(straight >= 0.0))
        throw UsageError("stadium: straight length must be >= 0");
    const double half = 0.5 * straight, L = stadium_length(straight);
    return [half, straight, L](double t, int order) -> Vec3 {
        double s = std::fmod(t, L);
        if (s < 0.0)
            s += L;
        auto arc = [order](double cx, double phi) -> Vec3 {
            const double c = std::cos(phi), sn = std::sin(phi);
            switch (order) {
            case 0: return Vec3(cx + c, sn, 0.0);
            case 1: return Vec3(-sn, c, 0.0);
            default: return Vec3(-c, -sn, 0.0);
            }
        };
        auto seg = [order](const Vec3& a, const Vec3& dir, double u) -> Vec3 {
            switch (order) {
            case 0: return a + u * dir;
            case 1: return dir;
            default: return Vec3::Zero();
            }
        };
        const double q = 0.5 * kPi;
        if (s < q)
            return arc(half, s);
        s -= q;
        if (s < straight)
            return seg(Vec3(half, 1.0, 0.0), Vec3(-1.0, 0.0, 0.0), s);
        s -= straight;
        if (s < kPi)
            return arc(-half, q + s);
        s -= kPi;
        if (s < straight)
            return seg(Vec3(-half, -1.0, 0.0), Vec3(1.0, 0.0, 0.0), s);
        s -= straight;
        return arc(half, -q + s);
    };
}

CurveFunction line_function(const Vec3& p0, const Vec3& d)
{
    return [p0, d](double t, int order) -> Vec3 {
        switch (order) {
        case 0: return p0 + t * d;
        case 1: return d;
        default: return Vec3::Zero();
        }
    };
}

SampledCurve sample_function(const CurveFunction& f, double t0, double t1, int n, bool closed, bool exact_tangents)
{
    if (n < 4 || !(t1 > t0))
        throw UsageError("sample_function: need n >= 4 and t1 > t0");
    std::vector<double> t(static_cast<std::size_t>(n));
    std::vector<Vec3> p(static_cast<std::size_t>(n)), tan;
    for (int i = 0; i < n; ++i) {
        const double ti = t0 + (t1 - t0) * i / (closed ? n : n - 1);
        t[static_cast<std::size_t>(i)] = ti;
        p[static_cast<std::size_t>(i)] = f(ti, 0);
        if (exact_tangents)
            tan.push_back(f(ti, 1).normalized());
    }
    return make_sampled_curve(std::move(t), std::move(p), closed, closed ? t1 - t0 : 0.0, std::move(tan));
}

} // namespace bhlab
