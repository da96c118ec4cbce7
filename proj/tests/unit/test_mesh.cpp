#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "bhlab/approx.hpp"
#include "bhlab/mesh.hpp"

using namespace bhlab;

TEST(Mesh, TwoByTwo)
{
    const Mesh m = mesh_generate(SurfaceEvaluator::closed_circle(3.0), 0.0, 0.5, -0.1, 0.1, 2, 2);
    EXPECT_EQ(m.vertices.size(), 4u);
    EXPECT_EQ(m.quads.size(), 1u);
    EXPECT_EQ(m.normals.size(), 4u);
}

TEST(Mesh, FundamentalStripNonDegenerate)
{
    const double a = 10.0, d = strip_halfwidth(a);
    const Mesh m = mesh_generate(SurfaceEvaluator::closed_circle(a), -kPi / 20, kPi / 20, -d, d, 40, 200);
    EXPECT_EQ(m.skipped_faces, 0);
    EXPECT_EQ(m.quads.size(), 39u * 199u);
    for (std::size_t q = 0; q < m.quads.size(); ++q)
        ASSERT_GT(m.quad_area(q), 1e-14);
}

TEST(Mesh, RejectsTinyGrid)
{
    EXPECT_THROW(mesh_generate(SurfaceEvaluator::closed_circle(3.0), 0, 1, 0, 1, 1, 5), UsageError);
}

TEST(Mesh, BitExactRoundTrips)
{
    const Mesh m = mesh_generate(SurfaceEvaluator::closed_circle(7.0), 0.0, 1.0, -0.2, 0.3, 9, 7);
    const auto dir = std::filesystem::temp_directory_path();
    const std::string obj = (dir / "bhlab_rt.obj").string(), ply = (dir / "bhlab_rt.ply").string();
    write_obj(obj, m);
    write_ply(ply, m);
    const Mesh a = read_obj(obj), b = read_ply(ply);
    std::remove(obj.c_str());
    std::remove(ply.c_str());
    ASSERT_EQ(a.vertices.size(), m.vertices.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        EXPECT_EQ(a.vertices[i], m.vertices[i]);
        EXPECT_EQ(b.vertices[i], m.vertices[i]);
        EXPECT_EQ(b.normals[i], m.normals[i]);
    }
    EXPECT_EQ(a.quads, m.quads);
    EXPECT_EQ(b.quads, m.quads);
}
