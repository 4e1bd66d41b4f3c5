#pragma once

#include "qcdist/angular.hpp"
#include "qcdist/beltrami.hpp"
#include "qcdist/mesh_io.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcdist {

/// Folded-face policy: faces with a non-positive Jacobian (|μ_T| ≥ 1) are
/// counted in foldedCount, excluded from every statistic and histogram, get
/// empty k / eps_mu cells in CSV, and are drawn in kFoldedColor.
inline constexpr Rgb kFoldedColor{255, 0, 255};

/// Corner excess over ε_μ_T tolerated before a face counts as a bound violation.
inline constexpr double kBoundTolerance = 1e-9;

inline constexpr std::size_t kDefaultHistogramBins = 50;

enum class ReportField { AbsMu, EpsAngleT, EpsMuT };

struct FieldStats {
    double mean = 0.0, max = 0.0, min = 0.0, std = 0.0;
};

struct Histogram {
    std::vector<double> binEdges;    ///< binCount + 1 edges
    std::vector<std::size_t> counts;
};

struct ReportMeta {
    std::string source;
    std::string target;
    std::string timestamp;
    std::string toolVersion = QCDIST_VERSION_STRING;
};

struct DistortionReport {
    std::size_t faceCount = 0;
    std::size_t foldedCount = 0;
    FieldStats absMu, epsAngleT, epsMuT;
    Histogram absMuHist, epsAngleTHist, epsMuTHist;
    std::size_t boundViolations = 0;
    ReportMeta meta;

    /// Per-face data behind the aggregates; not part of the JSON document.
    BeltramiField beltrami;
    AngularDistortionField angular;

    const FieldStats& stats(ReportField field) const;
    const Histogram& histogram(ReportField field) const;
    /// Field values per face (NaN on folded faces for ε_μ_T).
    const std::vector<double>& values(ReportField field) const;
};

struct SummarizeOptions {
    std::size_t bins = kDefaultHistogramBins;
    unsigned threads = 0;
    ReportMeta meta;
};

/// Beltrami and angular fields plus aggregates over non-folded faces,
/// accumulated sequentially in face order with compensated summation.
DistortionReport summarize(const MeshMap& map, const SummarizeOptions& options = {});

/// Uniform bins over [lo, hi] (default [0, max value]); values equal to hi go
/// to the last bin, values outside the range are not counted. An empty range
/// (hi ≤ lo) is widened to [lo, lo + 1]. Throws EmptyInput for no values,
/// DomainError for binCount == 0.
Histogram histogram(const std::vector<double>& values, std::size_t binCount,
                    std::optional<std::pair<double, double>> range = std::nullopt);

enum class ReportFormat { JSON, CSV };

/// JSON document with fixed key order; all angles in radians.
std::string report_json(const DistortionReport& r);
/// One row per face: face_id,abs_mu,k,eps_mu,eps_angle_t,corner_0,corner_1,corner_2,folded.
std::string report_csv(const DistortionReport& r);

/// Throws IOError.
void export_report(const DistortionReport& r, const std::filesystem::path& path, ReportFormat format);

/// Linear blue → red colormap: lo ↦ (0, 0, 255), hi ↦ (255, 0, 0), channels
/// rounded half away from zero, values clamped to [lo, hi].
Rgb colormap(double value, double lo, double hi);

/// PLY of the target mesh with one color per face. The range defaults to
/// [0, max field value]; folded faces use kFoldedColor. Throws IOError.
void export_colored_mesh(const MeshMap& map, const DistortionReport& r, ReportField field,
                         const std::filesystem::path& path,
                         std::optional<std::pair<double, double>> colormapRange = std::nullopt);

}  // namespace qcdist
