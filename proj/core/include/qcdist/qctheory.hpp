#pragma once

// Closed-form relations between the Beltrami coefficient of a linear map and
// the angles it distorts, together with grid-search oracles that check them
// without using the closed forms.

#include "qcdist/beltrami.hpp"

#include <cstddef>

namespace qcdist {

/// Linear model w = A z + B conj(z); orientation preserving iff |A| > |B|.
struct LinearModel {
    Complex A{1.0, 0.0};
    Complex B{0.0, 0.0};

    /// f_zbar / f_z = B / A.
    Complex mu() const { return B / A; }
    Complex apply(Complex z) const { return A * z + B * std::conj(z); }
    static LinearModel from_affine(const AffineMap2D& m);
};

struct PrincipalStretch {
    double lambdaX = 1.0;        ///< |A| + |B|, largest stretch
    double lambdaY = 1.0;        ///< |A| − |B|, smallest stretch
    double maxDirection = 0.0;   ///< (arg B − arg A)/2, source plane
    double imageRotation = 0.0;  ///< (arg A + arg B)/2, image plane
    double K = 1.0;              ///< lambdaX / lambdaY
};

/// Rotating source by maxDirection and image by imageRotation turns the
/// model into (ξ, η) ↦ (lambdaX ξ, lambdaY η). Throws DegenerateModel when
/// |A| ≤ |B|.
PrincipalStretch principal_stretch(const LinearModel& m);

/// Image of a ray at angle θ ∈ (0, π/2) from the maximal stretch direction:
/// arctan(tan θ / K). Throws DomainError.
double image_angle_axis(double theta, double K);

/// Image of the angle between two rays at α > β from the maximal stretch
/// direction, both on the same side of it (β ≥ 0 or α ≤ 0), α, β ∈ (−π/2, π/2).
/// tan φ = K (tan α − tan β)/(K² + tan α tan β), with φ ∈ (0, π).
/// Straddling pairs are rejected with DomainError.
double image_angle_general(double alpha, double beta, double K);

/// Slopes b = tan(orientation of the first side) that extremize the image
/// of an angle θ under (x, y) ↦ (x, y/K).
struct BisectorRoots {
    double b1;  ///< −tan(θ/2): bisector on the maximal stretch axis
    double b2;  ///< cot(θ/2): bisector on the minimal stretch axis
};

/// Throws DomainError unless θ ∈ (0, π).
BisectorRoots extremal_bisectors(double theta);

/// The same roots obtained from n b² − 2 b − n = 0, n = tan θ, solved
/// without cancellation. For θ > π/2 the "±" labels of the quadratic formula
/// swap; the result is ordered to match extremal_bisectors. θ = π/2 returns
/// the limit (−1, 1).
BisectorRoots extremal_bisectors_quadratic(double theta);

/// Image angle φ ∈ (0, π) of an angle θ whose first side has slope b, under
/// (x, y) ↦ (x, y/K); the tan φ = m n (b² + 1)/(m² b² + (m² − 1) n b + 1)
/// relation written in quadrant-safe sine/cosine form.
double image_angle_for_slope(double theta, double K, double b);

struct ExtremalDistortion {
    double maxDelta;  ///< max |φ − θ|, radians
    double argmaxB;   ///< slope achieving it (b1 or b2)
};

/// Largest |φ − θ| over all orientations, from the two critical slopes.
ExtremalDistortion max_distortion_for_angle(double theta, double K);

struct GridMaximum {
    double maxDelta;           ///< radians
    double argmaxOrientation;  ///< orientation of the first side, radians
};

/// Oracle: sweeps the first side over gridSize cell-centred orientations in
/// (−π/2, π/2) and measures |φ − θ| directly with atan2. gridSize ≥ 1000.
GridMaximum brute_force_max_distortion(double theta, double K, std::size_t gridSize);

struct HalfAngleDeviation {
    double deltaMax;   ///< arcsin((K − 1)/(K + 1))
    double thetaStar;  ///< arctan(√K), the half-angle that attains it
};

/// Throws DomainError unless K ≥ 1.
HalfAngleDeviation max_half_angle_deviation(double K);

/// Oracle: max over a cell-centred grid of θ ∈ (0, π/2) of θ − arctan(tan θ / K).
HalfAngleDeviation brute_force_half_angle_deviation(double K, std::size_t gridSize);

struct EllipseGeometry {
    double magDirection;
    double magFactor;
    double shrinkDirection;
    double shrinkFactor;
};

/// Axes of the ellipse that the unit circle maps to:
/// magnification |A|(1 + |μ|) along arg(μ)/2, shrinkage |A|(1 − |μ|)
/// along arg(μ)/2 + π/2. Throws DegenerateModel when |A| ≤ |B|.
EllipseGeometry ellipse_geometry(const LinearModel& m);

}  // namespace qcdist
