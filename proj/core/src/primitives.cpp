#include "qcdist/primitives.hpp"

#include "qcdist/errors.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace qcdist {

namespace {

struct RingDiskLayout {
    std::vector<Vec2> points;
    std::vector<Face> faces;
};

RingDiskLayout ring_disk_layout(int rings) {
    if (rings < 1) throw DomainError("ring disk needs at least one ring");
    RingDiskLayout out;
    out.points.emplace_back(0.0, 0.0);
    std::vector<Index> ringStart{0};
    for (int k = 1; k <= rings; ++k) {
        ringStart.push_back(static_cast<Index>(out.points.size()));
        const double r = static_cast<double>(k) / rings;
        for (int m = 0; m < 6 * k; ++m) {
            const double a = 2.0 * std::numbers::pi * m / (6.0 * k);
            out.points.emplace_back(r * std::cos(a), r * std::sin(a));
        }
    }
    for (int k = 1; k <= rings; ++k) {
        const auto outer = [&](int i) { return ringStart[k] + static_cast<Index>(i % (6 * k)); };
        const auto inner = [&](int i) {
            return k == 1 ? Index{0} : ringStart[k - 1] + static_cast<Index>(i % (6 * (k - 1)));
        };
        for (int s = 0; s < 6; ++s) {
            for (int i = 0; i < k; ++i)
                out.faces.push_back({outer(s * k + i), outer(s * k + i + 1), inner(s * (k - 1) + i)});
            for (int i = 0; i + 1 < k; ++i)
                out.faces.push_back({inner(s * (k - 1) + i), outer(s * k + i + 1), inner(s * (k - 1) + i + 1)});
        }
    }
    return out;
}

}  // namespace

TriMesh make_ring_disk(int rings, double radius) {
    auto layout = ring_disk_layout(rings);
    for (auto& p : layout.points) p *= radius;
    return TriMesh::planar(layout.points, std::move(layout.faces));
}

TriMesh make_grid(int nx, int ny, double width, double height) {
    return make_height_field(nx, ny, [](double, double) { return 0.0; }, width, height);
}

TriMesh make_height_field(int nx, int ny, const std::function<double(double, double)>& height,
                          double width, double height_extent) {
    if (nx < 1 || ny < 1) throw DomainError("grid needs at least one cell per axis");
    std::vector<Vec3> v;
    v.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double x = width * i / nx, y = height_extent * j / ny;
            v.emplace_back(x, y, height(x, y));
        }
    const auto id = [nx](int i, int j) { return static_cast<Index>(j * (nx + 1) + i); };
    std::vector<Face> faces;
    faces.reserve(static_cast<std::size_t>(2 * nx * ny));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return TriMesh(std::move(v), std::move(faces));
}

TriMesh make_spherical_cap(int rings, double polarAngle) {
    if (!(polarAngle > 0.0 && polarAngle < std::numbers::pi)) throw DomainError("cap polar angle must be in (0, π)");
    auto layout = ring_disk_layout(rings);
    std::vector<Vec3> v;
    v.reserve(layout.points.size());
    for (const auto& p : layout.points) {
        const double r = p.norm();
        const double phi = r * polarAngle;
        const double a = std::atan2(p.y(), p.x());
        v.emplace_back(std::sin(phi) * std::cos(a), std::sin(phi) * std::sin(a), std::cos(phi));
    }
    return TriMesh(std::move(v), std::move(layout.faces), 3);
}

TriMesh make_tetrahedron() {
    std::vector<Vec3> v{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::vector<Face> f{{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return TriMesh(std::move(v), std::move(f), 3);
}

TriMesh make_icosphere(int subdivisions) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v{{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                        {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (auto& p : v) p.normalize();
    std::vector<Face> f{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                        {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<Index, Index>, Index> midpoint;
        const auto mid = [&](Index a, Index b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            v.push_back((v[a] + v[b]).normalized());
            const auto idx = static_cast<Index>(v.size() - 1);
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<Face> next;
        next.reserve(f.size() * 4);
        for (const auto& tri : f) {
            const Index ab = mid(tri[0], tri[1]), bc = mid(tri[1], tri[2]), ca = mid(tri[2], tri[0]);
            next.push_back({tri[0], ab, ca});
            next.push_back({tri[1], bc, ab});
            next.push_back({tri[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        f = std::move(next);
    }
    return TriMesh(std::move(v), std::move(f), 3);
}

}  // namespace qcdist
