#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bhlab/bjorling.hpp"

namespace bhlab {

/// (R - 1/R)-neighbourhood of the circle of radius R in the (x1, x2)-plane.
struct TubeRegion {
    double R;

    explicit TubeRegion(double radius);
    double tube_radius() const { return R - 1.0 / R; }
    /// Distance from p to the core circle S^1(R).
    double core_distance(const Vec3& p) const;
    bool contains(const Vec3& p) const { return core_distance(p) < tube_radius(); }
};

/// Point of a leaf disk D_R in its (rho, x3) coordinates.
struct DiskPoint {
    double rho = 0.0;
    double x3 = 0.0;
};

struct TubeCoords {
    bool inside = false;
    std::string reason; ///< set when !inside
    double theta = 0.0; ///< in [0, 2pi)
    DiskPoint x;
};

TubeCoords tube_coords(double R, const Vec3& p);
Vec3 from_tube_coords(double theta, const DiskPoint& x);

enum class ArcLabel { Bottom, Right, Top, Left };
const char* arc_name(ArcLabel label);

/**
 * Component of F^{-1}(T_R) in the strip |x| <= pi/2a containing the core
 * segment. Each column x_j is an interval [y_lo_j, y_hi_j]; the four
 * boundary arcs are stored counter-clockwise starting at the bottom-left.
 */
struct FundamentalPiece {
    int a = 0;
    double R = 0.0;
    double half_width = 0.0; ///< pi / 2a
    double window = 0.0;     ///< sampled |y| range
    std::vector<double> xs;
    std::vector<double> y_lo;
    std::vector<double> y_hi;
    std::array<std::vector<cplx>, 4> arcs;
    /// Flood-filled nodes all lie in the per-column intervals.
    bool columns_simple = true;
    /// max |dist(F, S^1(R)) - tube radius| along the Bottom/Top arcs.
    double arc_boundary_residual = 0.0;
    /// max distance of F from the lines l(+-pi/2a) along Right/Left.
    double line_residual = 0.0;

    std::pair<double, double> bounds_at(double x) const;
    bool contains(cplx z) const;
    double y_min() const;
    double y_max() const;
};

/// Throws NumericalError when the component reaches |y| = window
/// (default 3 log(a) / a), suggesting a larger window.
FundamentalPiece extract_fundamental_piece(int a, double R, int columns = 81, int rows = 600, double window = 0.0);

/// max(|theta(F(z))| - pi/2a, 0) over the piece: how far the piece leaves
/// the wedge between the vertical half-planes through l(+-pi/2a).
double sector_excess(const FundamentalPiece& piece, int samples_per_column = 200);

struct CircleIntersection {
    int count = 0;
    double min_separation = 0.0; ///< infinity when count < 2
    double min_angle = 0.0;      ///< angle between C_x and the surface; infinity when count = 0
    std::vector<cplx> params;    ///< roots in the fundamental strip
    std::vector<Vec3> points;    ///< images (the whole orbit when requested)
};

/// Points of the piece (or of its Z_{2a} orbit when `orbit`) on the circle
/// C_x = {(rho cos t, rho sin t, x3)}.
CircleIntersection circle_intersection_count(const FundamentalPiece& piece, const DiskPoint& x, bool orbit);

enum class Verdict { Embedded, NotEmbedded, Inconclusive };
const char* verdict_name(Verdict v);

struct CircleSample {
    int index = 0;
    DiskPoint x;
    double offset = 0.0; ///< |x - (1, 0)| in D_R
    int count = 0;
    double min_separation = 0.0;
    double min_angle = 0.0;
    bool failed = false;
    std::string error;
};

struct EmbeddednessReport {
    Verdict verdict = Verdict::Inconclusive;
    int a = 0;
    double R = 0.0;
    int samples = 0;
    int failures = 0;
    int expected_count = 0;
    double min_separation = 0.0;
    double min_angle_outside = 0.0; ///< over samples with offset >= 1/a
    /// See sector_excess; the orbit is trivially embedded when this is 0.
    double sector_excess = 0.0;
    std::string note;
    std::vector<CircleSample> circles;
    std::vector<CircleSample> offenders;
};

/// Half the samples on a Vogel spiral within min(3/a, 0.9 (1 - 1/R)) of
/// (1, 0), half over the
/// disk of radius 0.95 (R - 1/R) about (R, 0).
std::vector<DiskPoint> stratified_disk_samples(int a, double R, int samples);

EmbeddednessReport embeddedness_verdict(int a, double R, int samples);

/// Rows leaf_index,x_offset,count,min_sep,min_angle,rho,x3.
void write_intersection_csv(const std::string& path, const EmbeddednessReport& report);

/// Max over piece samples at distance >= delta from S^1(1) of the angle
/// between the tangent plane and the leaf through the point.
double foliation_angle_metric(int a, double R, double delta, int columns = 41, int rows = 201);

struct SingularSet {
    int a = 0;
    std::vector<Vec3> cloud;      ///< piece points with |A| > a/2
    double hausdorff = 0.0;       ///< max distance of the cloud from S^1(1)
    double mean_radius = 0.0;     ///< mean |(p1, p2)| over the cloud
};

/// One entry per a; throws NumericalError on an empty blow-up set.
std::vector<SingularSet> singular_set_estimate(std::span<const int> a_list, double R, int columns = 41,
                                               int rows = 241);

} // namespace bhlab
