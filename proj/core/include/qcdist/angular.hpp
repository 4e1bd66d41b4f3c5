#pragma once

#include "qcdist/beltrami.hpp"

#include <array>
#include <vector>

namespace qcdist {

/// Per-corner angle change of a mesh map, in radians. Corner k of face f is
/// the angle at the face's k-th vertex, the same convention as corner_angles.
struct AngularDistortionField {
    std::vector<std::array<double, 3>> corner;        ///< |target − source|
    std::vector<std::array<double, 3>> signedCorner;  ///< target − source
    std::vector<double> faceAvg;                      ///< filled by face_distortion

    std::size_t size() const noexcept { return corner.size(); }
    double max_corner(std::size_t f) const noexcept;
};

/// Fills corner and signedCorner. Folded faces are included; their flipped
/// triangles still have well-defined angles. Throws DegenerateFace naming the
/// face and the mesh.
AngularDistortionField corner_distortion(const MeshMap& map, unsigned threads = 0);

/// Mean of the three corner distortions of each face.
std::vector<double> face_distortion(const AngularDistortionField& corners);

/// corner_distortion followed by face_distortion.
AngularDistortionField angular_distortion(const MeshMap& map, unsigned threads = 0);

}  // namespace qcdist
