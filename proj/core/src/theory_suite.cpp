#include "qcdist/theory_suite.hpp"

#include "qcdist/beltrami.hpp"
#include "qcdist/qctheory.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

namespace qcdist {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

/// Tracks the worst error across cases of one check.
class CheckBuilder {
public:
    CheckBuilder(std::string name, double tolerance) { check_.name = std::move(name), check_.tolerance = tolerance; }
    void record(double error, const std::string& detail) {
        ++check_.cases;
        if (!std::isfinite(error)) error = std::numeric_limits<double>::infinity();
        if (check_.cases == 1 || error > check_.worstError) {
            check_.worstError = error;
            check_.detail = detail;
        }
    }
    TheoryCheck finish() {
        check_.passed = check_.cases > 0 && check_.worstError <= check_.tolerance;
        return check_;
    }

private:
    TheoryCheck check_;
};

double distance_to_principal_axis(double angle) {
    const double q = kPi / 2;
    const double r = std::fmod(std::abs(angle), q);
    return std::min(r, q - r);
}

TheoryCheck check_tan_relation(const TheoryConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> modulus(0.1, 10.0), phase(-kPi, kPi), ratio(0.0, 0.95);
    std::uniform_real_distribution<double> angle(0.01, kPi / 2 - 0.01);
    CheckBuilder b("principal_axis_tan_relation", 1e-8);
    for (std::size_t i = 0; i < cfg.randomSamples; ++i) {
        const double absA = modulus(rng);
        LinearModel m{std::polar(absA, phase(rng)), std::polar(absA * ratio(rng), phase(rng))};
        const auto ps = principal_stretch(m);
        const double theta = angle(rng);
        const Complex w = m.apply(std::polar(1.0, ps.maxDirection + theta));
        const Complex rotated = w * std::polar(1.0, -ps.imageRotation);
        const double phi = std::atan2(rotated.imag(), rotated.real());
        const double lhs = std::tan(phi) * ps.K, rhs = std::tan(theta);
        b.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)),
                 fmt("K=%.6g theta=%.6g", ps.K, theta));
    }
    return b.finish();
}

TheoryCheck check_extremal_value(const TheoryConfig& cfg) {
    CheckBuilder value("extremal_angle_value", extremal_grid_tolerance(cfg.gridSize));
    for (double K : {1.5, 2.0, 5.0})
        for (double theta : {kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3}) {
            const auto formula = max_distortion_for_angle(theta, K);
            const auto grid = brute_force_max_distortion(theta, K, cfg.gridSize);
            value.record(std::abs(formula.maxDelta - grid.maxDelta), fmt("K=%.6g theta=%.6g", K, theta));
        }
    return value.finish();
}

TheoryCheck check_bisector_alignment(const TheoryConfig& cfg) {
    CheckBuilder align("extremal_bisector_alignment", 2 * kPi / static_cast<double>(cfg.gridSize));
    for (double K : {1.5, 2.0, 5.0})
        for (double theta : {kPi / 6, kPi / 3, kPi / 2, 2 * kPi / 3}) {
            const auto grid = brute_force_max_distortion(theta, K, cfg.gridSize);
            align.record(distance_to_principal_axis(grid.argmaxOrientation + theta / 2),
                         fmt("K=%.6g theta=%.6g", K, theta));
        }
    return align.finish();
}

TheoryCheck check_delta_max(const TheoryConfig& cfg) {
    CheckBuilder b("half_angle_deviation_grid", 1e-6);
    for (double K : {1.1, 1.5, 2.0, 3.0, 10.0}) {
        const auto grid = brute_force_half_angle_deviation(K, 10 * cfg.gridSize);
        b.record(std::abs(grid.deltaMax - max_half_angle_deviation(K).deltaMax), fmt("K=%.6g", K));
    }
    return b.finish();
}

TheoryCheck check_full_angle_bound() {
    CheckBuilder b("full_angle_bound_equals_eps_mu", 1e-12);
    for (double K : {1.0, 1.1, 1.5, 2.0, 3.0, 10.0, 100.0}) {
        const double mu = (K - 1) / (K + 1);
        b.record(std::abs(2 * max_half_angle_deviation(K).deltaMax - epsilon_mu(mu)), fmt("K=%.6g", K));
    }
    return b.finish();
}

TheoryCheck check_tan_delta() {
    CheckBuilder b("tan_delta_max_closed_form", 1e-12);
    for (double K : {1.0, 1.1, 1.5, 2.0, 3.0, 10.0}) {
        const auto d = max_half_angle_deviation(K);
        b.record(std::abs(std::tan(d.deltaMax) - (K - 1) / (2 * std::sqrt(K))), fmt("K=%.6g", K));
        b.record(std::abs(std::tan(d.thetaStar) - std::sqrt(K)), fmt("K=%.6g (theta*)", K));
    }
    return b.finish();
}

TheoryCheck check_two_sided(const TheoryConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 1);
    std::uniform_real_distribution<double> side(0.0, kPi / 2 - 0.01), kdist(1.0, 10.0);
    CheckBuilder b("two_sided_angle_formula", 1e-12);
    for (std::size_t i = 0; i < cfg.randomSamples; ++i) {
        double x = side(rng), y = side(rng);
        if (x == y) continue;
        const double K = kdist(rng);
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double alpha = sign > 0 ? std::max(x, y) : -std::min(x, y);
        const double beta = sign > 0 ? std::min(x, y) : -std::max(x, y);
        const double formula = image_angle_general(alpha, beta, K);
        // Direct oracle: both rays through (x, y) ↦ (x, y/K).
        const double ia = std::atan2(std::sin(alpha), K * std::cos(alpha));
        const double ib = std::atan2(std::sin(beta), K * std::cos(beta));
        b.record(std::abs(formula - (ia - ib)), fmt("alpha=%.6g beta=%.6g K=%.6g", alpha, beta, K));
    }
    return b.finish();
}

TheoryCheck check_reduction(const TheoryConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 2);
    std::uniform_real_distribution<double> side(0.001, kPi / 2 - 0.001), kdist(1.0, 10.0);
    CheckBuilder b("two_sided_reduces_to_axis", 1e-12);
    for (std::size_t i = 0; i < cfg.randomSamples; ++i) {
        const double alpha = side(rng), K = kdist(rng);
        b.record(std::abs(image_angle_general(alpha, 0.0, K) - image_angle_axis(alpha, K)),
                 fmt("alpha=%.6g K=%.6g", alpha, K));
    }
    return b.finish();
}

TheoryCheck check_bisector_identities() {
    CheckBuilder b("critical_slope_identities", 1e-10);
    for (int i = 1; i < 1000; ++i) {
        const double theta = kPi * i / 1000.0;
        const auto id = extremal_bisectors(theta);
        const auto quad = extremal_bisectors_quadratic(theta);
        const double e1 = std::abs(id.b1 - quad.b1) / std::max(1.0, std::abs(id.b1));
        const double e2 = std::abs(id.b2 - quad.b2) / std::max(1.0, std::abs(id.b2));
        b.record(std::max(e1, e2), fmt("theta=%.6g", theta));
    }
    return b.finish();
}

TheoryCheck check_single_case(const TheoryConfig& cfg) {
    const double K = cfg.K.value_or(2.0);
    const double theta = cfg.theta.value_or(kPi / 3);
    CheckBuilder b("single_case", extremal_grid_tolerance(cfg.gridSize));
    const auto formula = max_distortion_for_angle(theta, K);
    const auto grid = brute_force_max_distortion(theta, K, cfg.gridSize);
    b.record(std::abs(formula.maxDelta - grid.maxDelta),
             fmt("K=%.9g theta=%.9g formula=%.12g", K, theta, formula.maxDelta) +
                 fmt(" grid=%.12g", grid.maxDelta));
    return b.finish();
}

}  // namespace

bool TheoryReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const TheoryCheck& c) { return c.passed; });
}

double extremal_grid_tolerance(std::size_t gridSize) {
    const double ratio = 1e5 / static_cast<double>(std::max<std::size_t>(gridSize, 1));
    return ratio <= 1.0 ? 1e-5 : 1e-5 * ratio * ratio;
}

TheoryReport run_theory_suite(const TheoryConfig& config) {
    TheoryReport r;
    r.config = config;
    r.config.gridSize = std::max(config.gridSize, kMinTheoryGrid);
    const auto& cfg = r.config;
    r.checks.push_back(check_tan_relation(cfg));
    r.checks.push_back(check_two_sided(cfg));
    r.checks.push_back(check_reduction(cfg));
    r.checks.push_back(check_bisector_identities());
    r.checks.push_back(check_extremal_value(cfg));
    r.checks.push_back(check_bisector_alignment(cfg));
    r.checks.push_back(check_delta_max(cfg));
    r.checks.push_back(check_full_angle_bound());
    r.checks.push_back(check_tan_delta());
    if (cfg.K || cfg.theta) r.checks.push_back(check_single_case(cfg));
    return r;
}

void print_theory_table(const TheoryReport& report, std::ostream& out) {
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %-6s %8s %12s %12s  %s\n", "check", "result", "cases", "worst",
                  "tolerance", "worst case");
    out << line;
    for (const auto& c : report.checks) {
        std::snprintf(line, sizeof line, "%-34s %-6s %8zu %12.3e %12.3e  %s\n", c.name.c_str(),
                      c.passed ? "PASS" : "FAIL", c.cases, c.worstError, c.tolerance, c.detail.c_str());
        out << line;
    }
}

std::string theory_report_json(const TheoryReport& report) {
    nlohmann::ordered_json j;
    j["seed"] = report.config.seed;
    j["gridSize"] = report.config.gridSize;
    j["allPassed"] = report.all_passed();
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["cases"] = c.cases;
        e["worstError"] = c.worstError;
        e["tolerance"] = c.tolerance;
        e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    return j.dump(2);
}

}  // namespace qcdist
