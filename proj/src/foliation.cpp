#include "bhlab/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <sstream>

#include "bhlab/diffgeo.hpp"

namespace bhlab {

TubeRegion::TubeRegion(double radius) : R(radius)
{
    if (!(R > 1.0) || !std::isfinite(R))
        throw UsageError("tube: R must be > 1");
}

double TubeRegion::core_distance(const Vec3& p) const
{
    return std::hypot(std::hypot(p(0), p(1)) - R, p(2));
}

TubeCoords tube_coords(double R, const Vec3& p)
{
    const TubeRegion tube(R);
    TubeCoords tc;
    const double rho = std::hypot(p(0), p(1));
    if (rho < 1e-14) {
        tc.reason = "point on the x3-axis: theta undefined";
        return tc;
    }
    tc.theta = std::atan2(p(1), p(0));
    if (tc.theta < 0.0)
        tc.theta += 2.0 * kPi;
    tc.x = {rho, p(2)};
    tc.inside = tube.core_distance(p) < tube.tube_radius();
    if (!tc.inside)
        tc.reason = "outside T_R";
    return tc;
}

Vec3 from_tube_coords(double theta, const DiskPoint& x)
{
    return Vec3(x.rho * std::cos(theta), x.rho * std::sin(theta), x.x3);
}

const char* arc_name(ArcLabel label)
{
    switch (label) {
    case ArcLabel::Bottom: return "bottom";
    case ArcLabel::Right: return "right";
    case ArcLabel::Top: return "top";
    case ArcLabel::Left: return "left";
    }
    return "?";
}

std::pair<double, double> FundamentalPiece::bounds_at(double x) const
{
    if (xs.empty())
        return {0.0, 0.0};
    if (x <= xs.front())
        return {y_lo.front(), y_hi.front()};
    if (x >= xs.back())
        return {y_lo.back(), y_hi.back()};
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return {(1.0 - w) * y_lo[j - 1] + w * y_lo[j], (1.0 - w) * y_hi[j - 1] + w * y_hi[j]};
}

bool FundamentalPiece::contains(cplx z) const
{
    if (std::abs(z.real()) > half_width * (1.0 + 1e-12))
        return false;
    const auto [lo, hi] = bounds_at(z.real());
    return z.imag() >= lo && z.imag() <= hi;
}

double FundamentalPiece::y_min() const
{
    return *std::min_element(y_lo.begin(), y_lo.end());
}

double FundamentalPiece::y_max() const
{
    return *std::max_element(y_hi.begin(), y_hi.end());
}

FundamentalPiece extract_fundamental_piece(int a, double R, int columns, int rows, double window)
{
    if (a < 2)
        throw UsageError("fundamental piece: a must be an integer >= 2");
    if (columns < 3 || rows < 10)
        throw UsageError("fundamental piece: grid too coarse");
    const TubeRegion tube(R);
    const double ad = a;
    FundamentalPiece piece;
    piece.a = a;
    piece.R = R;
    piece.half_width = kPi / (2.0 * ad);
    piece.window = window > 0.0 ? window : 3.0 * std::log(ad) / ad;
    // signed margin: positive inside the tube
    auto margin = [&](double x, double y) {
        return tube.tube_radius() - tube.core_distance(bent_helicoid_closed(ad, cplx(x, y)));
    };

    if (rows % 2 == 1)
        ++rows; // even row count puts a node on y = 0
    const int ny = rows + 1;
    std::vector<double> xs(static_cast<std::size_t>(columns)), ys(static_cast<std::size_t>(ny));
    for (int i = 0; i < columns; ++i)
        xs[static_cast<std::size_t>(i)] = -piece.half_width + 2.0 * piece.half_width * i / (columns - 1);
    for (int j = 0; j < ny; ++j)
        ys[static_cast<std::size_t>(j)] = -piece.window + 2.0 * piece.window * j / rows;
    const int j0 = rows / 2; // ys[j0] == 0

    std::vector<char> inside(static_cast<std::size_t>(columns * ny), 0), mark(inside.size(), 0);
    auto idx = [ny](int i, int j) { return static_cast<std::size_t>(i * ny + j); };
    for (int i = 0; i < columns; ++i)
        for (int j = 0; j < ny; ++j)
            inside[idx(i, j)] = margin(xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]) > 0.0;

    std::deque<std::pair<int, int>> queue;
    for (int i = 0; i < columns; ++i) {
        if (!inside[idx(i, j0)])
            throw NumericalError("fundamental piece: core segment is not inside T_R");
        mark[idx(i, j0)] = 1;
        queue.emplace_back(i, j0);
    }
    bool escaped = false;
    while (!queue.empty()) {
        const auto [i, j] = queue.front();
        queue.pop_front();
        if (j == 0 || j == ny - 1)
            escaped = true;
        const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int ii = i + di[k], jj = j + dj[k];
            if (ii < 0 || ii >= columns || jj < 0 || jj >= ny)
                continue;
            if (inside[idx(ii, jj)] && !mark[idx(ii, jj)]) {
                mark[idx(ii, jj)] = 1;
                queue.emplace_back(ii, jj);
            }
        }
    }
    if (escaped) {
        std::ostringstream msg;
        msg << "fundamental piece: component reaches the sampling window |y| <= " << piece.window << " for a = " << a
            << ", R = " << R << "; retry with window >= " << 2.0 * piece.window;
        throw NumericalError(msg.str());
    }

    piece.xs = xs;
    piece.y_lo.resize(xs.size());
    piece.y_hi.resize(xs.size());
    for (int i = 0; i < columns; ++i) {
        int lo = j0, hi = j0;
        while (lo - 1 >= 0 && inside[idx(i, lo - 1)])
            --lo;
        while (hi + 1 < ny && inside[idx(i, hi + 1)])
            ++hi;
        for (int j = 0; j < ny; ++j)
            if (mark[idx(i, j)] && (j < lo || j > hi))
                piece.columns_simple = false;
        const double x = xs[static_cast<std::size_t>(i)];
        auto refine = [&](double yin, double yout) {
            for (int it = 0; it < 60; ++it) {
                const double ym = 0.5 * (yin + yout);
                (margin(x, ym) > 0.0 ? yin : yout) = ym;
            }
            return 0.5 * (yin + yout);
        };
        piece.y_lo[static_cast<std::size_t>(i)] =
            refine(ys[static_cast<std::size_t>(lo)], ys[static_cast<std::size_t>(lo - 1)]);
        piece.y_hi[static_cast<std::size_t>(i)] =
            refine(ys[static_cast<std::size_t>(hi)], ys[static_cast<std::size_t>(hi + 1)]);
    }

    // arcs, counter-clockwise
    const int side = 32;
    auto& bottom = piece.arcs[static_cast<std::size_t>(ArcLabel::Bottom)];
    auto& right = piece.arcs[static_cast<std::size_t>(ArcLabel::Right)];
    auto& top = piece.arcs[static_cast<std::size_t>(ArcLabel::Top)];
    auto& left = piece.arcs[static_cast<std::size_t>(ArcLabel::Left)];
    for (int i = 0; i < columns; ++i)
        bottom.emplace_back(xs[static_cast<std::size_t>(i)], piece.y_lo[static_cast<std::size_t>(i)]);
    for (int k = 0; k <= side; ++k) {
        const double w = static_cast<double>(k) / side;
        right.emplace_back(xs.back(), (1.0 - w) * piece.y_lo.back() + w * piece.y_hi.back());
    }
    for (int i = columns - 1; i >= 0; --i)
        top.emplace_back(xs[static_cast<std::size_t>(i)], piece.y_hi[static_cast<std::size_t>(i)]);
    for (int k = 0; k <= side; ++k) {
        const double w = static_cast<double>(k) / side;
        left.emplace_back(xs.front(), (1.0 - w) * piece.y_hi.front() + w * piece.y_lo.front());
    }

    for (const auto* arc : {&bottom, &top})
        for (const cplx& z : *arc)
            piece.arc_boundary_residual = std::max(piece.arc_boundary_residual, std::abs(margin(z.real(), z.imag())));
    for (const auto* arc : {&right, &left})
        for (const cplx& z : *arc) {
            const double t = z.real();
            const Vec3 u(std::cos(t), std::sin(t), 0.0);
            const Vec3 p = bent_helicoid_closed(ad, z);
            piece.line_residual = std::max(piece.line_residual, (p - p.dot(u) * u).norm());
        }
    return piece;
}

namespace {

struct Residual {
    double r1, r2;
};

class CircleSolver {
public:
    CircleSolver(const FundamentalPiece& piece, const DiskPoint& x)
        : piece_(piece), x_(x), surf_(SurfaceEvaluator::closed_circle(piece.a))
    {
    }

    Residual residual(cplx z) const
    {
        const Vec3 p = surf_.position(z);
        return {std::hypot(p(0), p(1)) - x_.rho, p(2) - x_.x3};
    }

    // Newton on (|F_12| - rho, F_3 - x3); true when |step| < 1e-11.
    bool newton(cplx& z) const
    {
        for (int it = 0; it < 50; ++it) {
            const Vec3 p = surf_.position(z);
            const CVec3 d = surf_.holo_derivative(z);
            const Vec3 fx = d.real(), fy = -d.imag();
            const double rho = std::hypot(p(0), p(1));
            if (rho < 1e-14)
                return false;
            const double r1 = rho - x_.rho, r2 = p(2) - x_.x3;
            const double j11 = (p(0) * fx(0) + p(1) * fx(1)) / rho, j12 = (p(0) * fy(0) + p(1) * fy(1)) / rho;
            const double j21 = fx(2), j22 = fy(2);
            const double det = j11 * j22 - j12 * j21;
            if (!(std::abs(det) > 1e-300))
                return false;
            const double dx = (r1 * j22 - r2 * j12) / det, dy = (j11 * r2 - j21 * r1) / det;
            z -= cplx(dx, dy);
            if (!is_finite(z))
                return false;
            if (std::hypot(dx, dy) < 1e-11)
                return true;
        }
        return false;
    }

    void scan(std::vector<cplx>& roots, int& failures) const
    {
        const double ad = piece_.a;
        const double hx = (kPi / ad) / 40.0, hy = (std::log(ad) / ad) / 40.0;
        // one cell beyond each edge: roots on x = +-pi/2a (the straight lines) stay interior
        const double x0 = -piece_.half_width - hx, x1 = piece_.half_width + hx;
        const double y0 = piece_.y_min(), y1 = piece_.y_max();
        const int nx = static_cast<int>(std::ceil((x1 - x0) / hx)), ny = static_cast<int>(std::ceil((y1 - y0) / hy));
        const double dx = (x1 - x0) / nx, dy = (y1 - y0) / ny;
        std::vector<Residual> grid(static_cast<std::size_t>((nx + 1) * (ny + 1)));
        for (int i = 0; i <= nx; ++i)
            for (int j = 0; j <= ny; ++j)
                grid[static_cast<std::size_t>(i * (ny + 1) + j)] = residual(cplx(x0 + i * dx, y0 + j * dy));
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) {
                const Residual c[4] = {grid[static_cast<std::size_t>(i * (ny + 1) + j)],
                                       grid[static_cast<std::size_t>((i + 1) * (ny + 1) + j)],
                                       grid[static_cast<std::size_t>((i + 1) * (ny + 1) + j + 1)],
                                       grid[static_cast<std::size_t>(i * (ny + 1) + j + 1)]};
                const double lx = x0 + i * dx, ly = y0 + j * dy;
                // skip cells entirely outside the piece
                const auto [blo, bhi] = piece_.bounds_at(lx + 0.5 * dx);
                if (ly > bhi + dy || ly + dy < blo - dy)
                    continue;
                cell(lx, ly, dx, dy, c, 0, roots, failures);
            }
    }

private:
    static bool straddles(const Residual c[4])
    {
        auto mixed = [&](auto get) {
            bool pos = false, neg = false;
            for (int k = 0; k < 4; ++k) {
                const double v = get(c[k]);
                pos = pos || v >= 0.0;
                neg = neg || v <= 0.0;
            }
            return pos && neg;
        };
        return mixed([](const Residual& r) { return r.r1; }) && mixed([](const Residual& r) { return r.r2; });
    }

    void cell(double lx, double ly, double dx, double dy, const Residual c[4], int depth, std::vector<cplx>& roots,
              int& failures) const
    {
        if (!straddles(c))
            return;
        cplx z(lx + 0.5 * dx, ly + 0.5 * dy);
        if (newton(z) && z.real() >= lx - 0.05 * dx && z.real() <= lx + 1.05 * dx && z.imag() >= ly - 0.05 * dy &&
            z.imag() <= ly + 1.05 * dy) {
            add(roots, z);
            return;
        }
        if (depth >= 24) {
            ++failures;
            return;
        }
        // bisection fallback: quarter the cell
        const double hx = 0.5 * dx, hy = 0.5 * dy;
        for (int qi = 0; qi < 2; ++qi)
            for (int qj = 0; qj < 2; ++qj) {
                const double sx = lx + qi * hx, sy = ly + qj * hy;
                const Residual s[4] = {residual(cplx(sx, sy)), residual(cplx(sx + hx, sy)),
                                       residual(cplx(sx + hx, sy + hy)), residual(cplx(sx, sy + hy))};
                cell(sx, sy, hx, hy, s, depth + 1, roots, failures);
            }
    }

    static void add(std::vector<cplx>& roots, cplx z)
    {
        for (const cplx& r : roots)
            if (std::abs(r - z) < 1e-8)
                return;
        roots.push_back(z);
    }

    const FundamentalPiece& piece_;
    DiskPoint x_;
    SurfaceEvaluator surf_;
};

} // namespace

CircleIntersection circle_intersection_count(const FundamentalPiece& piece, const DiskPoint& x, bool orbit)
{
    if (std::hypot(x.rho - 1.0, x.x3) < 1e-12)
        throw UsageError("circle_intersection_count: C_x is the singular circle S^1(1)");
    if (!(x.rho > 0.0))
        throw UsageError("circle_intersection_count: rho must be positive");
    const CircleSolver solver(piece, x);
    std::vector<cplx> roots;
    int failures = 0;
    solver.scan(roots, failures);
    if (failures > 0) {
        std::ostringstream msg;
        msg << "circle_intersection_count: root finder did not converge in " << failures
            << " cells at resolution (pi/a)/40 x d(a)/40";
        throw NumericalError(msg.str());
    }
    CircleIntersection out;
    const auto surf = SurfaceEvaluator::closed_circle(piece.a);
    std::vector<Vec3> base;
    double min_angle = std::numeric_limits<double>::infinity();
    for (const cplx& z : roots) {
        // half-open strip (-pi/2a, pi/2a] so neighbouring copies do not share roots
        const double edge = 1e-9 * piece.half_width;
        if (z.real() <= -piece.half_width + edge || z.real() > piece.half_width + edge)
            continue;
        if (!piece.contains(cplx(std::clamp(z.real(), -piece.half_width, piece.half_width), z.imag())))
            continue;
        out.params.push_back(z);
        const Vec3 p = surf.position(z);
        base.push_back(p);
        const Vec3 tangent(-p(1), p(0), 0.0);
        const Vec3 n = surf.unit_normal(z);
        min_angle = std::min(min_angle, std::asin(std::min(1.0, std::abs(tangent.normalized().dot(n)))));
    }
    const int copies = orbit ? 2 * piece.a : 1;
    for (int k = 0; k < copies; ++k) {
        const double ang = k * kPi / piece.a;
        const Mat3 rot = Eigen::AngleAxisd(ang, Vec3::UnitZ()).toRotationMatrix();
        for (const Vec3& p : base) {
            const Vec3 q = rot * p;
            bool dup = false;
            for (const Vec3& e : out.points)
                dup = dup || (e - q).norm() < 1e-9;
            if (!dup)
                out.points.push_back(q);
        }
    }
    out.count = static_cast<int>(out.points.size());
    out.min_angle = min_angle;
    out.min_separation = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.points.size(); ++i)
        for (std::size_t j = i + 1; j < out.points.size(); ++j)
            out.min_separation = std::min(out.min_separation, (out.points[i] - out.points[j]).norm());
    return out;
}

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Embedded: return "EMBEDDED";
    case Verdict::NotEmbedded: return "NOT_EMBEDDED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::vector<DiskPoint> stratified_disk_samples(int a, double R, int samples)
{
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    const int inner = samples / 2, outer = samples - inner;
    // inner stratum kept inside D_R: (1, 0) is R - 1 from the centre
    const double r_in = std::min(3.0 / a, 0.9 * (1.0 - 1.0 / R)), r_out = 0.95 * (R - 1.0 / R);
    std::vector<DiskPoint> pts;
    for (int i = 0; i < inner; ++i) {
        const double r = r_in * std::sqrt((i + 0.5) / inner), phi = i * golden;
        pts.push_back({1.0 + r * std::cos(phi), r * std::sin(phi)});
    }
    for (int i = 0; i < outer; ++i) {
        const double r = r_out * std::sqrt((i + 0.5) / outer), phi = i * golden;
        pts.push_back({R + r * std::cos(phi), r * std::sin(phi)});
    }
    return pts;
}

double sector_excess(const FundamentalPiece& piece, int samples_per_column)
{
    double ex = 0.0;
    for (std::size_t i = 0; i < piece.xs.size(); ++i)
        for (int j = 0; j <= samples_per_column; ++j) {
            const double y = piece.y_lo[i] + (piece.y_hi[i] - piece.y_lo[i]) * j / samples_per_column;
            const Vec3 q = bent_helicoid_closed(piece.a, {piece.xs[i], y});
            ex = std::max(ex, std::abs(std::atan2(q(1), q(0))) - piece.half_width);
        }
    return ex;
}

EmbeddednessReport embeddedness_verdict(int a, double R, int samples)
{
    if (samples < 1)
        throw UsageError("embeddedness_verdict: need at least one sample");
    EmbeddednessReport rep;
    rep.a = a;
    rep.R = R;
    rep.samples = samples;
    rep.expected_count = 2 * a;
    std::optional<FundamentalPiece> piece;
    try {
        piece = extract_fundamental_piece(a, R);
    } catch (const NumericalError& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.failures = samples;
        rep.note = std::string("piece extraction failed: ") + e.what();
        return rep;
    }
    rep.sector_excess = sector_excess(*piece);
    rep.min_separation = std::numeric_limits<double>::infinity();
    rep.min_angle_outside = std::numeric_limits<double>::infinity();
    bool bad = false;
    const auto pts = stratified_disk_samples(a, R, samples);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CircleSample cs;
        cs.index = static_cast<int>(i);
        cs.x = pts[i];
        cs.offset = std::hypot(cs.x.rho - 1.0, cs.x.x3);
        try {
            const CircleIntersection ci = circle_intersection_count(*piece, cs.x, true);
            cs.count = ci.count;
            cs.min_separation = ci.min_separation;
            cs.min_angle = ci.min_angle;
        } catch (const NumericalError& e) {
            cs.failed = true;
            cs.error = e.what();
            ++rep.failures;
            rep.circles.push_back(cs);
            continue;
        }
        bool offending = cs.count != rep.expected_count || !(cs.min_separation > 0.0);
        rep.min_separation = std::min(rep.min_separation, cs.min_separation);
        if (cs.offset >= 1.0 / a) {
            rep.min_angle_outside = std::min(rep.min_angle_outside, cs.min_angle);
            offending = offending || !(cs.min_angle > 1e-8);
        }
        if (offending) {
            bad = true;
            rep.offenders.push_back(cs);
        }
        rep.circles.push_back(cs);
    }
    std::ostringstream note;
    if (rep.failures > 0.001 * samples) {
        rep.verdict = Verdict::Inconclusive;
        note << rep.failures << " root-finder failures exceed the 0.1% budget";
    } else if (bad) {
        rep.verdict = Verdict::NotEmbedded;
        note << rep.offenders.size() << " sampled circles violate the 2a-point condition";
    } else {
        rep.verdict = Verdict::Embedded;
        note << "no self-intersection detected at resolution (pi/a)/40 x d(a)/40 over " << samples << " circles";
    }
    if (!piece->columns_simple)
        note << "; component columns are not simple intervals";
    rep.note = note.str();
    return rep;
}

void write_intersection_csv(const std::string& path, const EmbeddednessReport& report)
{
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr)
        throw UsageError("cannot write '" + path + "'");
    std::fprintf(f, "leaf_index,x_offset,count,min_sep,min_angle,rho,x3\n");
    for (const auto& c : report.circles)
        std::fprintf(f, "%d,%.10g,%d,%.10g,%.10g,%.10g,%.10g\n", c.index, c.offset, c.failed ? -1 : c.count,
                     c.min_separation, c.min_angle, c.x.rho, c.x.x3);
    std::fclose(f);
}

double foliation_angle_metric(int a, double R, double delta, int columns, int rows)
{
    const TubeRegion tube(R);
    if (!(delta > 0.0) || !(delta < tube.tube_radius()))
        throw UsageError("foliation_angle_metric: need 0 < delta < R - 1/R");
    const FundamentalPiece piece = extract_fundamental_piece(a, R);
    const auto surf = SurfaceEvaluator::closed_circle(a);
    double worst = 0.0;
    for (int i = 0; i < columns; ++i) {
        const double x = -piece.half_width + 2.0 * piece.half_width * i / (columns - 1);
        const auto [lo, hi] = piece.bounds_at(x);
        for (int j = 0; j < rows; ++j) {
            const double y = lo + (hi - lo) * (j + 0.5) / rows;
            const cplx z(x, y);
            const Vec3 p = surf.position(z);
            if (std::hypot(std::hypot(p(0), p(1)) - 1.0, p(2)) < delta || !tube.contains(p))
                continue;
            const double rho = std::hypot(p(0), p(1));
            const Vec3 e_theta(-p(1) / rho, p(0) / rho, 0.0);
            const double c = std::min(1.0, std::abs(surf.unit_normal(z).dot(e_theta)));
            worst = std::max(worst, std::acos(c));
        }
    }
    return worst;
}

namespace {

// |A| = 2 sqrt(2) |G_z| / ((1 + |G|^2) lambda) for a minimal surface.
double second_form_norm_closed(double a, cplx z)
{
    const cplx e = std::exp(kI * z), u = std::cos(a * z), v = 1.0 - std::sin(a * z);
    const cplx g = -e * u / v;
    const cplx gz = -e * (kI * u + a) / v;
    const double lambda = conformal_factor(a, z.real(), z.imag());
    return 2.0 * std::sqrt(2.0) * std::abs(gz) / ((1.0 + std::norm(g)) * lambda);
}

} // namespace

std::vector<SingularSet> singular_set_estimate(std::span<const int> a_list, double R, int columns, int rows)
{
    for (std::size_t i = 1; i < a_list.size(); ++i)
        if (a_list[i] <= a_list[i - 1])
            throw UsageError("singular_set_estimate: a_list must be increasing");
    std::vector<SingularSet> out;
    for (int a : a_list) {
        const FundamentalPiece piece = extract_fundamental_piece(a, R);
        SingularSet s;
        s.a = a;
        const double band = 3.0 / a;
        for (int i = 0; i < columns; ++i) {
            const double x = -piece.half_width + 2.0 * piece.half_width * i / (columns - 1);
            const auto [lo, hi] = piece.bounds_at(x);
            const double y0 = std::max(lo, -band), y1 = std::min(hi, band);
            for (int j = 0; j < rows; ++j) {
                const cplx z(x, y0 + (y1 - y0) * j / (rows - 1));
                if (second_form_norm_closed(a, z) > 0.5 * a)
                    s.cloud.push_back(bent_helicoid_closed(a, z));
            }
        }
        if (s.cloud.empty()) {
            std::ostringstream msg;
            msg << "singular_set_estimate: no point with |A| > a/2 for a = " << a << "; threshold too high";
            throw NumericalError(msg.str());
        }
        double sum_r = 0.0;
        for (const Vec3& p : s.cloud) {
            const double r = std::hypot(p(0), p(1));
            s.hausdorff = std::max(s.hausdorff, std::hypot(r - 1.0, p(2)));
            sum_r += r;
        }
        s.mean_radius = sum_r / static_cast<double>(s.cloud.size());
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace bhlab
