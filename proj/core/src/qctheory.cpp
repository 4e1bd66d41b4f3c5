#include "qcdist/qctheory.hpp"

#include "qcdist/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qcdist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kModelGuard = 1e-14;

void check_model(const LinearModel& m) {
    const double a = std::abs(m.A), b = std::abs(m.B);
    if (!(a - b > kModelGuard * (a + b)))
        throw DegenerateModel("linear model is not orientation preserving (|A| <= |B|)");
}

void check_K(double K, const char* fn) {
    if (!(K >= 1.0) || !std::isfinite(K)) throw DomainError(std::string(fn) + ": K must be finite and >= 1");
}

void check_open_angle(double theta, const char* fn) {
    if (!(theta > 0.0 && theta < kPi)) throw DomainError(std::string(fn) + ": theta must lie in (0, pi)");
}

}  // namespace

LinearModel LinearModel::from_affine(const AffineMap2D& m) {
    const auto w = wirtinger(m);
    return {w.fz, w.fzbar};
}

PrincipalStretch principal_stretch(const LinearModel& m) {
    check_model(m);
    const double a = std::abs(m.A), b = std::abs(m.B);
    const double thetaA = std::arg(m.A), thetaB = std::arg(m.B);
    PrincipalStretch s;
    s.lambdaX = a + b;
    s.lambdaY = a - b;
    s.maxDirection = (thetaB - thetaA) / 2.0;
    s.imageRotation = (thetaA + thetaB) / 2.0;
    s.K = s.lambdaX / s.lambdaY;
    return s;
}

double image_angle_axis(double theta, double K) {
    check_K(K, "image_angle_axis");
    if (!(theta > 0.0 && theta < kPi / 2)) throw DomainError("image_angle_axis: theta must lie in (0, pi/2)");
    return std::atan2(std::sin(theta), K * std::cos(theta));
}

double image_angle_general(double alpha, double beta, double K) {
    check_K(K, "image_angle_general");
    const auto inside = [](double x) { return x > -kPi / 2 && x < kPi / 2; };
    if (!inside(alpha) || !inside(beta)) throw DomainError("image_angle_general: sides must lie in (-pi/2, pi/2)");
    if (!(alpha > beta)) throw DomainError("image_angle_general: requires alpha > beta");
    if (!(beta >= 0.0 || alpha <= 0.0))
        throw DomainError("image_angle_general: sides straddle the maximal stretch direction");
    const double ta = std::tan(alpha), tb = std::tan(beta);
    return std::atan2(K * (ta - tb), K * K + ta * tb);
}

BisectorRoots extremal_bisectors(double theta) {
    check_open_angle(theta, "extremal_bisectors");
    const double t = std::tan(theta / 2.0);
    return {-t, 1.0 / t};
}

BisectorRoots extremal_bisectors_quadratic(double theta) {
    check_open_angle(theta, "extremal_bisectors_quadratic");
    const double c = std::cos(theta), s = std::sin(theta);
    if (c == 0.0 || std::abs(c) < 1e-300) return {-1.0, 1.0};
    const double n = s / c;
    const double root = std::sqrt(1.0 + n * n);
    // (1 + sqrt(1 + n²))/n is cancellation-free; the other root follows from b1·b2 = −1.
    const double plus = (1.0 + root) / n;
    const double minus = -1.0 / plus;
    return n > 0 ? BisectorRoots{minus, plus} : BisectorRoots{plus, minus};
}

double image_angle_for_slope(double theta, double K, double b) {
    const double m = 1.0 / K;
    const double s = std::sin(theta), c = std::cos(theta);
    return std::atan2(m * s * (1.0 + b * b), c * (1.0 + m * m * b * b) + (m * m - 1.0) * b * s);
}

ExtremalDistortion max_distortion_for_angle(double theta, double K) {
    check_K(K, "max_distortion_for_angle");
    check_open_angle(theta, "max_distortion_for_angle");
    const auto [b1, b2] = extremal_bisectors(theta);
    const double d1 = std::abs(image_angle_for_slope(theta, K, b1) - theta);
    const double d2 = std::abs(image_angle_for_slope(theta, K, b2) - theta);
    return d1 >= d2 ? ExtremalDistortion{d1, b1} : ExtremalDistortion{d2, b2};
}

GridMaximum brute_force_max_distortion(double theta, double K, std::size_t gridSize) {
    check_K(K, "brute_force_max_distortion");
    check_open_angle(theta, "brute_force_max_distortion");
    if (gridSize < 1000) throw DomainError("brute_force_max_distortion: gridSize must be >= 1000");
    const double m = 1.0 / K;
    GridMaximum best{-1.0, 0.0};
    for (std::size_t i = 0; i < gridSize; ++i) {
        const double alpha = -kPi / 2 + (static_cast<double>(i) + 0.5) * kPi / static_cast<double>(gridSize);
        const double ux = std::cos(alpha), uy = m * std::sin(alpha);
        const double vx = std::cos(alpha + theta), vy = m * std::sin(alpha + theta);
        const double phi = std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
        const double delta = std::abs(phi - theta);
        if (delta > best.maxDelta) best = {delta, alpha};
    }
    return best;
}

HalfAngleDeviation max_half_angle_deviation(double K) {
    check_K(K, "max_half_angle_deviation");
    return {std::asin((K - 1.0) / (K + 1.0)), std::atan(std::sqrt(K))};
}

HalfAngleDeviation brute_force_half_angle_deviation(double K, std::size_t gridSize) {
    check_K(K, "brute_force_half_angle_deviation");
    if (gridSize == 0) throw DomainError("brute_force_half_angle_deviation: empty grid");
    HalfAngleDeviation best{-1.0, 0.0};
    for (std::size_t i = 0; i < gridSize; ++i) {
        const double theta = (static_cast<double>(i) + 0.5) * (kPi / 2) / static_cast<double>(gridSize);
        const double delta = theta - std::atan2(std::sin(theta), K * std::cos(theta));
        if (delta > best.deltaMax) best = {delta, theta};
    }
    return best;
}

EllipseGeometry ellipse_geometry(const LinearModel& m) {
    check_model(m);
    const Complex mu = m.mu();
    const double absA = std::abs(m.A), absMu = std::abs(mu);
    const double dir = absMu == 0.0 ? 0.0 : std::arg(mu) / 2.0;
    return {dir, absA * (1.0 + absMu), dir + kPi / 2, absA * (1.0 - absMu)};
}

}  // namespace qcdist
