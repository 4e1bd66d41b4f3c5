#pragma once

#include "qcdist/mesh.hpp"

#include <functional>

namespace qcdist {

/// Planar triangulated disk of concentric rings: ring k holds 6k vertices on
/// the circle of radius k/rings × radius. 6·rings² faces, counter-clockwise.
TriMesh make_ring_disk(int rings, double radius = 1.0);

/// Planar [0,width]×[0,height] grid with nx×ny cells split along the diagonal.
TriMesh make_grid(int nx, int ny, double width = 1.0, double height = 1.0);

/// Grid lifted by z = height(x, y).
TriMesh make_height_field(int nx, int ny, const std::function<double(double, double)>& height,
                          double width = 1.0, double height_extent = 1.0);

/// Unit-sphere cap of the given polar half-angle, built from make_ring_disk
/// with an azimuthal-equidistant lift. polarAngle = π/2 gives a hemisphere.
TriMesh make_spherical_cap(int rings, double polarAngle);

/// Closed regular tetrahedron with outward orientation.
TriMesh make_tetrahedron();

/// Closed icosphere (outward orientation) after `subdivisions` 1:4 splits.
TriMesh make_icosphere(int subdivisions);

}  // namespace qcdist
