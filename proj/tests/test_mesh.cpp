#include "qcdist/errors.hpp"
#include "qcdist/mesh.hpp"
#include "qcdist/mesh_io.hpp"
#include "qcdist/primitives.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qcdist {
namespace {

using testing::kPi;

TriMesh obj(const std::string& text) {
    std::istringstream in(text);
    return read_obj(in);
}

TEST(ObjReader, MinimalTriangle) {
    const auto m = obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
    EXPECT_EQ(m.num_vertices(), 3u);
    ASSERT_EQ(m.num_faces(), 1u);
    EXPECT_EQ(m.face(0), (Face{0, 1, 2}));
    EXPECT_EQ(m.dimension(), 2);
}

TEST(ObjReader, RepeatedIndexIsValidationError) {
    EXPECT_THROW(obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 2\n"), ValidationError);
}

TEST(ObjReader, QuadIsFanTriangulated) {
    const auto m = obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
    ASSERT_EQ(m.num_faces(), 2u);
    EXPECT_EQ(m.face(0), (Face{0, 1, 2}));
    EXPECT_EQ(m.face(1), (Face{0, 2, 3}));
}

TEST(ObjReader, SlashesCommentsAndNegativeIndices) {
    const auto m = obj("# header\nv 0 0 1\nv 1 0 0\nv 0 1 0\nvt 0 0\nvn 0 0 1\ng part\nf -3/1/1 -2/1/1 -1//1\n");
    ASSERT_EQ(m.num_faces(), 1u);
    EXPECT_EQ(m.face(0), (Face{0, 1, 2}));
    EXPECT_EQ(m.dimension(), 3);
}

TEST(ObjReader, MalformedLineReportsLineNumber) {
    try {
        obj("v 0 0 0\nv 1 0 0\nv 0 x 0\nf 1 2 3\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2\n"), ParseError);
}

TEST(ObjReader, OutOfRangeIndexIsValidationError) {
    EXPECT_THROW(obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n"), ValidationError);
    EXPECT_THROW(obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n"), ValidationError);
}

TEST(ObjReader, DegenerateFaceRejected) {
    EXPECT_THROW(obj("v 0 0 0\nv 1 0 0\nv 2 0 0\nf 1 2 3\n"), DegenerateFace);
}

TEST(OffReader, ParsesHeaderAndPolygons) {
    std::istringstream in("OFF\n# comment\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    const auto m = read_off(in);
    EXPECT_EQ(m.num_faces(), 2u);
    EXPECT_EQ(m.face(1), (Face{0, 2, 3}));
    std::istringstream bad("OFF\n3 1 0\n0 0 0\n1 0 0\n");
    EXPECT_THROW(read_off(bad), ParseError);
    std::istringstream noHeader("3 1 0\n");
    EXPECT_THROW(read_off(noHeader), ParseError);
}

TEST(TriMesh, DimensionInference) {
    EXPECT_EQ(testing::single_triangle({0, 0, 1e-13}, {1, 0, 0}, {0, 1, 0}).dimension(), 2);
    EXPECT_EQ(testing::single_triangle({0, 0, 1e-9}, {1, 0, 0}, {0, 1, 0}).dimension(), 3);
    EXPECT_THROW(TriMesh({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}, 2), ValidationError);
}

TEST(MeshIo, SaveLoadRoundTrip) {
    const auto dir = testing::temp_dir("mesh_io");
    const auto m = testing::single_triangle({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
    for (auto fmt : {MeshFormat::OBJ, MeshFormat::OFF}) {
        const auto path = dir / (fmt == MeshFormat::OBJ ? "t.obj" : "t.off");
        save_mesh(m, path, fmt);
        const auto back = load_mesh(path);
        EXPECT_EQ(back.faces(), m.faces());
        EXPECT_EQ(back.vertices(), m.vertices());
    }
}

TEST(MeshIo, PlanarMeshWritesZeroZ) {
    std::ostringstream out;
    write_obj(make_grid(1, 1), out);
    std::istringstream in(out.str());
    std::string tag;
    double x, y, z;
    int vertices = 0;
    while (in >> tag) {
        if (tag != "v") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        in >> x >> y >> z;
        EXPECT_EQ(z, 0.0);
        ++vertices;
    }
    EXPECT_EQ(vertices, 4);
}

TEST(MeshIo, UnwritablePathIsIOError) {
    EXPECT_THROW(save_mesh(testing::equilateral(), "/nonexistent-dir/x/out.obj", MeshFormat::OBJ), IOError);
    EXPECT_THROW(load_mesh("/nonexistent-dir/in.obj"), IOError);
    EXPECT_THROW(format_from_path("mesh.stl"), IOError);
}

// Property: save∘load is the identity on positions and faces for random meshes.
TEST(MeshIo, RoundTripPropertyRandomPositions) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    const auto dir = testing::temp_dir("mesh_io_prop");
    const auto base = make_ring_disk(4);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vec3> v;
        for (std::size_t i = 0; i < base.num_vertices(); ++i) v.emplace_back(u(rng), u(rng), u(rng));
        TriMesh m;
        try {
            m = base.with_vertices(v);
        } catch (const DegenerateFace&) {
            continue;
        }
        for (auto fmt : {MeshFormat::OBJ, MeshFormat::OFF}) {
            const auto path = dir / (fmt == MeshFormat::OBJ ? "r.obj" : "r.off");
            save_mesh(m, path, fmt);
            const auto back = load_mesh(path, fmt);
            ASSERT_EQ(back.faces(), m.faces());
            for (std::size_t i = 0; i < m.num_vertices(); ++i)
                EXPECT_LE((back.vertex(Index(i)) - m.vertex(Index(i))).norm(), 1e-12 * 1e3);
        }
    }
}

TEST(MeshIo, PlyHeaderWithColors) {
    std::ostringstream out;
    const auto m = testing::equilateral();
    const std::vector<Rgb> colors{{1, 2, 3}};
    write_ply(m, out, colors);
    const auto s = out.str();
    EXPECT_NE(s.find("element vertex 3"), std::string::npos);
    EXPECT_NE(s.find("property list uchar int vertex_indices"), std::string::npos);
    EXPECT_NE(s.find("property uchar red"), std::string::npos);
    EXPECT_NE(s.find("3 0 1 2 1 2 3\n"), std::string::npos);
}

TEST(CornerAngles, Equilateral) {
    const auto a = corner_angles(testing::equilateral()).angles[0];
    for (double x : a) EXPECT_NEAR(x, kPi / 3, 1e-12);
}

TEST(CornerAngles, RightTriangle) {
    const auto a = corner_angles(testing::single_triangle({0, 0, 0}, {1, 0, 0}, {0, 1, 0})).angles[0];
    EXPECT_NEAR(a[0], kPi / 2, 1e-12);
    EXPECT_NEAR(a[1], kPi / 4, 1e-12);
    EXPECT_NEAR(a[2], kPi / 4, 1e-12);
}

TEST(CornerAngles, SquashedEquilateralMatchesLawOfCosines) {
    const Vec3 p0(0, 0, 0), p1(1, 0, 0), p2(0.5, std::sqrt(3.0) / 4, 0);
    const auto a = corner_angles(testing::single_triangle(p0, p1, p2)).angles[0];
    const double o0 = testing::law_of_cosines_angle(p0, p1, p2);
    const double o1 = testing::law_of_cosines_angle(p1, p2, p0);
    const double o2 = testing::law_of_cosines_angle(p2, p0, p1);
    EXPECT_NEAR(a[0], o0, 1e-12);
    EXPECT_NEAR(a[1], o1, 1e-12);
    EXPECT_NEAR(a[2], o2, 1e-12);
    // Values quoted to six decimals for this triangle.
    EXPECT_NEAR(a[0], 0.713724, 1e-6);
    EXPECT_NEAR(a[1], 0.713724, 1e-6);
    EXPECT_NEAR(a[2], 1.714144, 1e-6);
}

TEST(CornerAngles, AngleSumAndRigidInvariance) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(-5.0, 5.0);
    const auto mesh = make_spherical_cap(6, 1.2);
    const auto base = corner_angles(mesh);
    const auto areas = face_areas(mesh);
    for (const auto& a : base.angles) EXPECT_NEAR(a[0] + a[1] + a[2], kPi, 1e-9);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Matrix3d R = testing::random_rotation(rng);
        const Vec3 shift(t(rng), t(rng), t(rng));
        const auto moved = testing::transformed(mesh, [&](const Vec3& p) { return Vec3(R * p + shift); });
        const auto a = corner_angles(moved);
        const auto ar = face_areas(moved);
        for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
            for (int k = 0; k < 3; ++k) EXPECT_NEAR(a.angles[f][k], base.angles[f][k], 1e-9);
            EXPECT_NEAR(ar[f], areas[f], 1e-9);
        }
    }
}

TEST(FaceAreas, KnownValuesAndScaling) {
    EXPECT_DOUBLE_EQ(face_areas(testing::single_triangle({0, 0, 0}, {1, 0, 0}, {0, 1, 0}))[0], 0.5);
    EXPECT_NEAR(face_areas(testing::equilateral())[0], std::sqrt(3.0) / 4, 1e-15);
    const auto doubled = testing::transformed(testing::equilateral(), [](const Vec3& p) { return Vec3(2 * p); });
    EXPECT_NEAR(face_areas(doubled)[0], 4 * std::sqrt(3.0) / 4, 1e-14);
}

TEST(BoundaryLoops, SingleTriangle) {
    const auto loops = boundary_loops(testing::equilateral());
    ASSERT_EQ(loops.size(), 1u);
    EXPECT_EQ(loops[0], (std::vector<Index>{0, 1, 2}));
}

TEST(BoundaryLoops, ClosedTetrahedronHasNone) {
    const auto tet = make_tetrahedron();
    EXPECT_TRUE(boundary_loops(tet).empty());
    EXPECT_TRUE(inconsistent_orientation_edges(tet).empty());
    EXPECT_EQ(edge_count(tet), 6u);
}

TEST(BoundaryLoops, TwoTrianglesSharingAnEdge) {
    const TriMesh m({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2}, {0, 2, 3}});
    // Oracle: count edge incidences, keep directed edges of count 1, chain them.
    std::map<std::pair<Index, Index>, int> count;
    for (const auto& f : m.faces())
        for (int k = 0; k < 3; ++k) count[std::minmax(f[k], f[(k + 1) % 3])]++;
    std::map<Index, Index> next;
    for (const auto& f : m.faces())
        for (int k = 0; k < 3; ++k)
            if (count[std::minmax(f[k], f[(k + 1) % 3])] == 1) next[f[k]] = f[(k + 1) % 3];
    std::vector<Index> expected{0};
    for (Index v = next[0]; v != 0; v = next[v]) expected.push_back(v);

    const auto loops = boundary_loops(m);
    ASSERT_EQ(loops.size(), 1u);
    EXPECT_EQ(loops[0], expected);
    EXPECT_EQ(loops[0].size(), 4u);
}

TEST(BoundaryLoops, NonManifoldEdgeThrows) {
    const TriMesh m({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}}, {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}});
    EXPECT_THROW(boundary_loops(m), NonManifoldEdge);
}

TEST(Orientation, InconsistentEdgeReportedNotRepaired) {
    const TriMesh m({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2}, {0, 3, 2}});
    const auto bad = inconsistent_orientation_edges(m);
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad[0], (std::array<Index, 2>{0, 2}));
    EXPECT_EQ(m.face(1), (Face{0, 3, 2}));
}

TEST(Primitives, CountsAndTopology) {
    const auto disk = make_ring_disk(5);
    EXPECT_EQ(disk.num_faces(), 150u);
    EXPECT_EQ(boundary_loops(disk).size(), 1u);
    EXPECT_EQ(static_cast<long long>(disk.num_vertices()) - static_cast<long long>(edge_count(disk)) +
                  static_cast<long long>(disk.num_faces()),
              1);
    EXPECT_TRUE(inconsistent_orientation_edges(disk).empty());
    for (double a : face_areas(disk)) EXPECT_GT(a, 0.0);

    const auto ico = make_icosphere(2);
    EXPECT_EQ(ico.num_faces(), 320u);
    EXPECT_TRUE(boundary_loops(ico).empty());
    EXPECT_TRUE(inconsistent_orientation_edges(ico).empty());
    EXPECT_EQ(make_grid(3, 2).num_faces(), 12u);
}

}  // namespace
}  // namespace qcdist
