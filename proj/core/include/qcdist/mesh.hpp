#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qcdist {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Index = std::uint32_t;
using Face = std::array<Index, 3>;

/// Indexed triangle mesh with 2D or 3D vertex positions.
///
/// Positions are always stored as 3-vectors; a dimension-2 mesh has z == 0
/// exactly. Construction validates index range, repeated indices, and
/// degeneracy (area > areaEpsilon), so every TriMesh instance is valid.
/// Instances are immutable and safe to share across threads.
class TriMesh {
public:
    /// Tolerance on |z| used to infer a planar mesh.
    static constexpr double kPlanarZTolerance = 1e-12;
    /// Relative factor for areaEpsilon (× bbox diagonal²) and lengthEpsilon (× diagonal).
    static constexpr double kRelativeEpsilon = 1e-12;

    TriMesh() = default;

    /// Validating constructor. `dimension` 0 infers it from the z coordinates.
    /// Throws ValidationError or DegenerateFace.
    TriMesh(std::vector<Vec3> vertices, std::vector<Face> faces, int dimension = 0);

    /// Planar mesh from 2D points.
    static TriMesh planar(std::span<const Vec2> points, std::vector<Face> faces);

    /// Same connectivity with new positions (revalidated).
    TriMesh with_vertices(std::vector<Vec3> vertices, int dimension = 0) const;

    const std::vector<Vec3>& vertices() const noexcept { return vertices_; }
    const std::vector<Face>& faces() const noexcept { return faces_; }
    const Vec3& vertex(Index i) const { return vertices_[i]; }
    const Face& face(std::size_t f) const { return faces_[f]; }
    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_faces() const noexcept { return faces_.size(); }
    int dimension() const noexcept { return dimension_; }

    double bbox_diagonal() const noexcept { return diagonal_; }
    double area_epsilon() const noexcept { return kRelativeEpsilon * diagonal_ * diagonal_; }
    double length_epsilon() const noexcept { return kRelativeEpsilon * diagonal_; }

    /// Corner positions of face f.
    std::array<Vec3, 3> triangle(std::size_t f) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<Face> faces_;
    int dimension_ = 3;
    double diagonal_ = 0.0;
};

/// Corner angles in radians; corner k is the angle at the face's k-th vertex.
struct CornerAngleField {
    std::vector<std::array<double, 3>> angles;
};

/// Angle between u and v via atan2(|u × v|, u · v).
double angle_between(const Vec3& u, const Vec3& v);

/// Unsigned area of a triangle.
double triangle_area(const Vec3& p0, const Vec3& p1, const Vec3& p2);

/// Corner angles of one triangle. Throws DegenerateFace (tagged with `face`)
/// when an edge is shorter than `lengthEpsilon`.
std::array<double, 3> triangle_corner_angles(const std::array<Vec3, 3>& tri, double lengthEpsilon,
                                             std::size_t face = 0);

CornerAngleField corner_angles(const TriMesh& mesh, unsigned threads = 0);

std::vector<double> face_areas(const TriMesh& mesh);

/// Boundary cycles following the face orientation (interior on the left).
/// Empty for closed meshes; throws NonManifoldEdge when an edge has > 2 faces.
/// Loops are ordered by their smallest boundary half-edge.
std::vector<std::vector<Index>> boundary_loops(const TriMesh& mesh);

/// Number of distinct undirected edges.
std::size_t edge_count(const TriMesh& mesh);

/// Interior edges whose two faces traverse it in the same direction.
/// Reported only; the mesh is never reoriented.
std::vector<std::array<Index, 2>> inconsistent_orientation_edges(const TriMesh& mesh);

}  // namespace qcdist
