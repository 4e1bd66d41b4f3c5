#include "qcdist/mesh.hpp"

#include "qcdist/errors.hpp"
#include "qcdist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace qcdist {

namespace {

double compute_diagonal(const std::vector<Vec3>& vertices) {
    if (vertices.empty()) return 0.0;
    Vec3 lo = vertices.front(), hi = vertices.front();
    for (const auto& v : vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    return (hi - lo).norm();
}

struct HalfEdge {
    Index lo, hi;   // undirected key
    Index from, to; // direction within its face
    std::size_t face;
};

std::vector<HalfEdge> sorted_half_edges(const TriMesh& mesh) {
    std::vector<HalfEdge> edges;
    edges.reserve(3 * mesh.num_faces());
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const Face& t = mesh.face(f);
        for (int k = 0; k < 3; ++k) {
            const Index a = t[k], b = t[(k + 1) % 3];
            edges.push_back({std::min(a, b), std::max(a, b), a, b, f});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const HalfEdge& x, const HalfEdge& y) {
        return std::tie(x.lo, x.hi, x.face) < std::tie(y.lo, y.hi, y.face);
    });
    return edges;
}

template <class Fn>
void for_each_edge_group(const std::vector<HalfEdge>& edges, Fn&& fn) {
    std::size_t i = 0;
    while (i < edges.size()) {
        std::size_t j = i + 1;
        while (j < edges.size() && edges[j].lo == edges[i].lo && edges[j].hi == edges[i].hi) ++j;
        fn(i, j);
        i = j;
    }
}

}  // namespace

TriMesh::TriMesh(std::vector<Vec3> vertices, std::vector<Face> faces, int dimension)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
    if (dimension != 0 && dimension != 2 && dimension != 3)
        throw ValidationError("mesh dimension must be 2 or 3, got " + std::to_string(dimension));

    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!vertices_[i].allFinite())
            throw ValidationError("vertex " + std::to_string(i) + " has a non-finite coordinate");

    const bool flat = std::all_of(vertices_.begin(), vertices_.end(),
                                  [](const Vec3& v) { return std::abs(v.z()) <= kPlanarZTolerance; });
    if (dimension == 2 && !flat) throw ValidationError("dimension-2 mesh has non-zero z coordinates");
    dimension_ = dimension != 0 ? dimension : (flat ? 2 : 3);
    if (dimension_ == 2)
        for (auto& v : vertices_) v.z() = 0.0;

    diagonal_ = compute_diagonal(vertices_);

    const auto n = vertices_.size();
    const double areaEps = area_epsilon();
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        const Face& t = faces_[f];
        for (Index idx : t)
            if (idx >= n)
                throw ValidationError("face " + std::to_string(f) + " references vertex " +
                                      std::to_string(idx) + " but the mesh has " + std::to_string(n) +
                                      " vertices");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw ValidationError("face " + std::to_string(f) + " has a repeated vertex index");
        const double area = triangle_area(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
        if (!(area > areaEps))
            throw DegenerateFace(f, "", "area " + std::to_string(area) + " below threshold");
    }
}

TriMesh TriMesh::planar(std::span<const Vec2> points, std::vector<Face> faces) {
    std::vector<Vec3> v;
    v.reserve(points.size());
    for (const auto& p : points) v.emplace_back(p.x(), p.y(), 0.0);
    return TriMesh(std::move(v), std::move(faces), 2);
}

TriMesh TriMesh::with_vertices(std::vector<Vec3> vertices, int dimension) const {
    if (vertices.size() != vertices_.size())
        throw ValidationError("vertex count mismatch: expected " + std::to_string(vertices_.size()) +
                              ", got " + std::to_string(vertices.size()));
    return TriMesh(std::move(vertices), faces_, dimension);
}

std::array<Vec3, 3> TriMesh::triangle(std::size_t f) const {
    const Face& t = faces_[f];
    return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
}

double angle_between(const Vec3& u, const Vec3& v) {
    return std::atan2(u.cross(v).norm(), u.dot(v));
}

double triangle_area(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    return 0.5 * (p1 - p0).cross(p2 - p0).norm();
}

std::array<double, 3> triangle_corner_angles(const std::array<Vec3, 3>& tri, double lengthEpsilon,
                                             std::size_t face) {
    for (int k = 0; k < 3; ++k)
        if (!((tri[(k + 1) % 3] - tri[k]).norm() >= lengthEpsilon))
            throw DegenerateFace(face, "", "edge " + std::to_string(k) + " shorter than lengthEpsilon");
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k) {
        const Vec3 u = tri[(k + 1) % 3] - tri[k];
        const Vec3 w = tri[(k + 2) % 3] - tri[k];
        out[k] = angle_between(u, w);
    }
    return out;
}

CornerAngleField corner_angles(const TriMesh& mesh, unsigned threads) {
    CornerAngleField field;
    field.angles.resize(mesh.num_faces());
    const double eps = mesh.length_epsilon();
    parallel_for(mesh.num_faces(), threads, [&](std::size_t f) {
        field.angles[f] = triangle_corner_angles(mesh.triangle(f), eps, f);
    });
    return field;
}

std::vector<double> face_areas(const TriMesh& mesh) {
    std::vector<double> areas(mesh.num_faces());
    for (std::size_t f = 0; f < mesh.num_faces(); ++f) {
        const auto tri = mesh.triangle(f);
        areas[f] = triangle_area(tri[0], tri[1], tri[2]);
    }
    return areas;
}

std::vector<std::vector<Index>> boundary_loops(const TriMesh& mesh) {
    const auto edges = sorted_half_edges(mesh);

    // Boundary half-edges keyed by their start vertex; a vertex may start
    // several when boundary loops touch at it.
    std::multimap<Index, Index> next;
    for_each_edge_group(edges, [&](std::size_t i, std::size_t j) {
        if (j - i > 2) throw NonManifoldEdge(edges[i].lo, edges[i].hi, j - i);
        if (j - i == 1) next.emplace(edges[i].from, edges[i].to);
    });

    std::vector<std::vector<Index>> loops;
    while (!next.empty()) {
        auto it = next.begin();
        const Index start = it->first;
        std::vector<Index> loop{start};
        Index cur = it->second;
        next.erase(it);
        while (cur != start) {
            loop.push_back(cur);
            auto nx = next.find(cur);
            if (nx == next.end())
                throw ValidationError("boundary chain starting at vertex " + std::to_string(start) +
                                      " does not close; inconsistent orientation near vertex " +
                                      std::to_string(cur));
            cur = nx->second;
            next.erase(nx);
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

std::size_t edge_count(const TriMesh& mesh) {
    const auto edges = sorted_half_edges(mesh);
    std::size_t count = 0;
    for_each_edge_group(edges, [&](std::size_t, std::size_t) { ++count; });
    return count;
}

std::vector<std::array<Index, 2>> inconsistent_orientation_edges(const TriMesh& mesh) {
    const auto edges = sorted_half_edges(mesh);
    std::vector<std::array<Index, 2>> bad;
    for_each_edge_group(edges, [&](std::size_t i, std::size_t j) {
        if (j - i == 2 && edges[i].from == edges[i + 1].from) bad.push_back({edges[i].lo, edges[i].hi});
    });
    return bad;
}

}  // namespace qcdist
