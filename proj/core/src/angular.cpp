#include "qcdist/angular.hpp"

#include "qcdist/errors.hpp"
#include "qcdist/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace qcdist {

double AngularDistortionField::max_corner(std::size_t f) const noexcept {
    return std::max({corner[f][0], corner[f][1], corner[f][2]});
}

AngularDistortionField corner_distortion(const MeshMap& map, unsigned threads) {
    const std::size_t n = map.num_faces();
    AngularDistortionField field;
    field.corner.resize(n);
    field.signedCorner.resize(n);
    const double srcEps = map.source().length_epsilon();
    const double dstEps = map.target().length_epsilon();
    parallel_for(n, threads, [&](std::size_t f) {
        std::array<double, 3> before, after;
        try {
            before = triangle_corner_angles(map.source().triangle(f), srcEps, f);
        } catch (const DegenerateFace&) {
            throw DegenerateFace(f, "source", "edge shorter than lengthEpsilon");
        }
        try {
            after = triangle_corner_angles(map.target().triangle(f), dstEps, f);
        } catch (const DegenerateFace&) {
            throw DegenerateFace(f, "target", "edge shorter than lengthEpsilon");
        }
        for (int k = 0; k < 3; ++k) {
            field.signedCorner[f][k] = after[k] - before[k];
            field.corner[f][k] = std::abs(field.signedCorner[f][k]);
        }
    });
    return field;
}

std::vector<double> face_distortion(const AngularDistortionField& corners) {
    std::vector<double> avg(corners.size());
    for (std::size_t f = 0; f < corners.size(); ++f) {
        const auto& c = corners.corner[f];
        avg[f] = (c[0] + c[1] + c[2]) / 3.0;
    }
    return avg;
}

AngularDistortionField angular_distortion(const MeshMap& map, unsigned threads) {
    auto field = corner_distortion(map, threads);
    field.faceAvg = face_distortion(field);
    return field;
}

}  // namespace qcdist
