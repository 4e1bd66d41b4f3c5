#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qcdist {

struct TheoryConfig {
    std::uint64_t seed = 42;
    /// Orientation grid for the extremal-angle oracle; half-angle oracle uses 10×.
    std::size_t gridSize = 100000;
    std::size_t randomSamples = 1000;
    /// Optional single case checked in addition to the fixed sweeps.
    std::optional<double> K;
    std::optional<double> theta;
};

/// Smallest orientation grid accepted by the oracles.
inline constexpr std::size_t kMinTheoryGrid = 1000;

struct TheoryCheck {
    std::string name;
    bool passed = false;
    double worstError = 0.0;
    double tolerance = 0.0;
    std::size_t cases = 0;
    /// Parameters of the worst case (or the single case when requested).
    std::string detail;
};

struct TheoryReport {
    TheoryConfig config;
    std::vector<TheoryCheck> checks;

    bool all_passed() const noexcept;
};

/// Tolerance for oracle/formula agreement of the extremal distortion on a grid
/// of `gridSize` orientations: 1e−5 at ≥ 10⁵ points, growing with the
/// squared grid spacing below that.
double extremal_grid_tolerance(std::size_t gridSize);

/// Runs every closed-form relation against its oracle. Deterministic for a
/// given config.
TheoryReport run_theory_suite(const TheoryConfig& config);

void print_theory_table(const TheoryReport& report, std::ostream& out);
std::string theory_report_json(const TheoryReport& report);

}  // namespace qcdist
