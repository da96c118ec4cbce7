#pragma once

#include <array>
#include <string>
#include <vector>

#include "bhlab/bjorling.hpp"

namespace bhlab {

struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;
    std::vector<std::array<double, 2>> params; ///< (x, y) per vertex
    std::vector<std::array<int, 4>> quads;
    int skipped_faces = 0; ///< cells dropped for a degenerate metric or area

    std::size_t face_count() const { return quads.size(); }
    /// Area of the two triangles of quad q.
    double quad_area(std::size_t q) const;
};

/// Regular nx x ny grid over [x0, x1] x [y0, y1]; normals from F_x x F_y.
Mesh mesh_generate(const SurfaceEvaluator& surface, double x0, double x1, double y0, double y1, int nx, int ny);

/// OBJ with `v`, `vn` and `f a//a ...` lines, 17 significant digits.
void write_obj(const std::string& path, const Mesh& mesh);
Mesh read_obj(const std::string& path);

/// Binary little-endian PLY: float64 x y z nx ny nz u v, quad faces.
void write_ply(const std::string& path, const Mesh& mesh);
Mesh read_ply(const std::string& path);

} // namespace bhlab
