#include "bhlab/mesh.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace bhlab {

static_assert(std::endian::native == std::endian::little, "PLY writer assumes a little-endian host");

double Mesh::quad_area(std::size_t q) const
{
    const auto& f = quads[q];
    const Vec3 &a = vertices[static_cast<std::size_t>(f[0])], &b = vertices[static_cast<std::size_t>(f[1])],
               &c = vertices[static_cast<std::size_t>(f[2])], &d = vertices[static_cast<std::size_t>(f[3])];
    return 0.5 * ((b - a).cross(c - a).norm() + (c - a).cross(d - a).norm());
}

Mesh mesh_generate(const SurfaceEvaluator& surface, double x0, double x1, double y0, double y1, int nx, int ny)
{
    if (nx < 2 || ny < 2)
        throw UsageError("mesh_generate: nx and ny must be >= 2");
    if (!(x1 > x0) || !(y1 > y0))
        throw UsageError("mesh_generate: empty parameter range");
    Mesh m;
    std::vector<bool> degenerate;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double x = x0 + (x1 - x0) * i / (nx - 1), y = y0 + (y1 - y0) * j / (ny - 1);
            const cplx z(x, y);
            m.vertices.push_back(surface.position(z));
            const Vec3 n = surface.fx(z).cross(surface.fy(z));
            const double len = n.norm();
            degenerate.push_back(!(len > 1e-24));
            m.normals.push_back(len > 0.0 ? Vec3(n / len) : Vec3::Zero());
            m.params.push_back({x, y});
        }
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            const int a = j * nx + i;
            const std::array<int, 4> q{a, a + 1, a + 1 + nx, a + nx};
            bool bad = false;
            for (int k : q)
                bad = bad || degenerate[static_cast<std::size_t>(k)];
            m.quads.push_back(q);
            if (!bad)
                bad = !(m.quad_area(m.quads.size() - 1) > 1e-14);
            if (bad) {
                m.quads.pop_back();
                ++m.skipped_faces;
            }
        }
    return m;
}

void write_obj(const std::string& path, const Mesh& mesh)
{
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr)
        throw UsageError("cannot write '" + path + "'");
    std::fprintf(f, "# bhlab mesh: %zu vertices, %zu quads\n", mesh.vertices.size(), mesh.quads.size());
    for (const Vec3& v : mesh.vertices)
        std::fprintf(f, "v %.17g %.17g %.17g\n", v(0), v(1), v(2));
    for (const Vec3& n : mesh.normals)
        std::fprintf(f, "vn %.17g %.17g %.17g\n", n(0), n(1), n(2));
    for (const auto& p : mesh.params)
        std::fprintf(f, "vt %.17g %.17g\n", p[0], p[1]);
    for (const auto& q : mesh.quads)
        std::fprintf(f, "f %d/%d/%d %d/%d/%d %d/%d/%d %d/%d/%d\n", q[0] + 1, q[0] + 1, q[0] + 1, q[1] + 1, q[1] + 1,
                     q[1] + 1, q[2] + 1, q[2] + 1, q[2] + 1, q[3] + 1, q[3] + 1, q[3] + 1);
    if (std::fclose(f) != 0)
        throw NumericalError("error closing '" + path + "'");
}

Mesh read_obj(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    Mesh m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v" || tag == "vn") {
            std::string sx, sy, sz;
            ls >> sx >> sy >> sz;
            if (sz.empty())
                throw UsageError(path + ":" + std::to_string(lineno) + ": short vertex line");
            // strtod round-trips the 17-digit output exactly
            const Vec3 v(std::strtod(sx.c_str(), nullptr), std::strtod(sy.c_str(), nullptr),
                         std::strtod(sz.c_str(), nullptr));
            (tag == "v" ? m.vertices : m.normals).push_back(v);
        } else if (tag == "vt") {
            std::string su, sv;
            ls >> su >> sv;
            m.params.push_back({std::strtod(su.c_str(), nullptr), std::strtod(sv.c_str(), nullptr)});
        } else if (tag == "f") {
            std::array<int, 4> q{};
            for (int k = 0; k < 4; ++k) {
                std::string tok;
                if (!(ls >> tok))
                    throw UsageError(path + ":" + std::to_string(lineno) + ": only quad faces are supported");
                q[static_cast<std::size_t>(k)] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
            }
            m.quads.push_back(q);
        }
    }
    return m;
}

namespace {

void put(std::ofstream& out, double v)
{
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.write(buf, 8);
}

double get_double(std::ifstream& in)
{
    char buf[8];
    in.read(buf, 8);
    double v;
    std::memcpy(&v, buf, 8);
    return v;
}

} // namespace

void write_ply(const std::string& path, const Mesh& mesh)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    out << "ply\nformat binary_little_endian 1.0\ncomment bhlab\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    for (const char* p : {"x", "y", "z", "nx", "ny", "nz", "u", "v"})
        out << "property double " << p << "\n";
    out << "element face " << mesh.quads.size() << "\n";
    out << "property list uchar int vertex_indices\nend_header\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        for (int k = 0; k < 3; ++k)
            put(out, mesh.vertices[i](k));
        for (int k = 0; k < 3; ++k)
            put(out, i < mesh.normals.size() ? mesh.normals[i](k) : 0.0);
        put(out, i < mesh.params.size() ? mesh.params[i][0] : 0.0);
        put(out, i < mesh.params.size() ? mesh.params[i][1] : 0.0);
    }
    for (const auto& q : mesh.quads) {
        const unsigned char four = 4;
        out.write(reinterpret_cast<const char*>(&four), 1);
        for (int idx : q) {
            const std::int32_t v = idx;
            out.write(reinterpret_cast<const char*>(&v), 4);
        }
    }
    if (!out)
        throw NumericalError("error writing '" + path + "'");
}

Mesh read_ply(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    std::string line;
    std::size_t nv = 0, nf = 0;
    while (std::getline(in, line)) {
        if (line.rfind("element vertex", 0) == 0)
            nv = std::stoul(line.substr(15));
        else if (line.rfind("element face", 0) == 0)
            nf = std::stoul(line.substr(13));
        else if (line == "end_header")
            break;
    }
    Mesh m;
    for (std::size_t i = 0; i < nv; ++i) {
        double v[8];
        for (double& x : v)
            x = get_double(in);
        m.vertices.emplace_back(v[0], v[1], v[2]);
        m.normals.emplace_back(v[3], v[4], v[5]);
        m.params.push_back({v[6], v[7]});
    }
    for (std::size_t i = 0; i < nf; ++i) {
        unsigned char count = 0;
        in.read(reinterpret_cast<char*>(&count), 1);
        if (count != 4)
            throw UsageError(path + ": only quad faces are supported");
        std::array<int, 4> q{};
        for (int& idx : q) {
            std::int32_t v;
            in.read(reinterpret_cast<char*>(&v), 4);
            idx = v;
        }
        m.quads.push_back(q);
    }
    if (!in)
        throw UsageError(path + ": truncated PLY body");
    return m;
}

} // namespace bhlab
