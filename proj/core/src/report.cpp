#include "qcdist/report.hpp"

#include "qcdist/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

namespace qcdist {

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0, comp_ = 0.0;
};

FieldStats field_stats(const std::vector<double>& values, const std::vector<std::uint8_t>& folded) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    FieldStats s{nan, nan, nan, nan};
    CompensatedSum sum;
    std::size_t count = 0;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t f = 0; f < values.size(); ++f) {
        if (folded[f]) continue;
        sum.add(values[f]);
        lo = std::min(lo, values[f]);
        hi = std::max(hi, values[f]);
        ++count;
    }
    if (count == 0) return s;
    const double mean = sum.value() / static_cast<double>(count);
    CompensatedSum sq;
    for (std::size_t f = 0; f < values.size(); ++f)
        if (!folded[f]) sq.add((values[f] - mean) * (values[f] - mean));
    s.mean = mean;
    s.min = lo;
    s.max = hi;
    s.std = std::sqrt(sq.value() / static_cast<double>(count));
    return s;
}

std::vector<double> unfolded(const std::vector<double>& values, const std::vector<std::uint8_t>& folded) {
    std::vector<double> out;
    out.reserve(values.size());
    for (std::size_t f = 0; f < values.size(); ++f)
        if (!folded[f]) out.push_back(values[f]);
    return out;
}

Histogram histogram_or_empty(const std::vector<double>& values, std::size_t bins) {
    if (values.empty()) return {};
    return histogram(values, bins);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json stats_json(const FieldStats& s) {
    nlohmann::ordered_json j;
    j["mean"] = s.mean;
    j["max"] = s.max;
    j["min"] = s.min;
    j["std"] = s.std;
    return j;
}

nlohmann::ordered_json histogram_json(const Histogram& h) {
    nlohmann::ordered_json j;
    j["binEdges"] = h.binEdges;
    j["counts"] = h.counts;
    return j;
}

}  // namespace

const FieldStats& DistortionReport::stats(ReportField field) const {
    switch (field) {
        case ReportField::AbsMu: return absMu;
        case ReportField::EpsAngleT: return epsAngleT;
        case ReportField::EpsMuT: break;
    }
    return epsMuT;
}

const Histogram& DistortionReport::histogram(ReportField field) const {
    switch (field) {
        case ReportField::AbsMu: return absMuHist;
        case ReportField::EpsAngleT: return epsAngleTHist;
        case ReportField::EpsMuT: break;
    }
    return epsMuTHist;
}

const std::vector<double>& DistortionReport::values(ReportField field) const {
    switch (field) {
        case ReportField::AbsMu: return beltrami.absMu;
        case ReportField::EpsAngleT: return angular.faceAvg;
        case ReportField::EpsMuT: break;
    }
    return beltrami.epsMu;
}

DistortionReport summarize(const MeshMap& map, const SummarizeOptions& options) {
    DistortionReport r;
    r.meta = options.meta;
    r.beltrami = face_beltrami(map, options.threads);
    r.angular = angular_distortion(map, options.threads);
    r.faceCount = map.num_faces();
    r.foldedCount = r.beltrami.folded_count();

    const auto& folded = r.beltrami.folded;
    r.absMu = field_stats(r.beltrami.absMu, folded);
    r.epsAngleT = field_stats(r.angular.faceAvg, folded);
    r.epsMuT = field_stats(r.beltrami.epsMu, folded);
    r.absMuHist = histogram_or_empty(unfolded(r.beltrami.absMu, folded), options.bins);
    r.epsAngleTHist = histogram_or_empty(unfolded(r.angular.faceAvg, folded), options.bins);
    r.epsMuTHist = histogram_or_empty(unfolded(r.beltrami.epsMu, folded), options.bins);

    for (std::size_t f = 0; f < r.faceCount; ++f)
        if (!folded[f] && r.angular.max_corner(f) > r.beltrami.epsMu[f] + kBoundTolerance) ++r.boundViolations;
    return r;
}

Histogram histogram(const std::vector<double>& values, std::size_t binCount,
                    std::optional<std::pair<double, double>> range) {
    if (values.empty()) throw EmptyInput("histogram of an empty value list");
    if (binCount == 0) throw DomainError("histogram needs at least one bin");
    double lo = 0.0, hi = 0.0;
    if (range) {
        std::tie(lo, hi) = *range;
    } else {
        hi = *std::max_element(values.begin(), values.end());
    }
    if (!(hi > lo)) hi = lo + 1.0;

    Histogram h;
    h.binEdges.resize(binCount + 1);
    const double width = (hi - lo) / static_cast<double>(binCount);
    for (std::size_t k = 0; k <= binCount; ++k) h.binEdges[k] = lo + width * static_cast<double>(k);
    h.binEdges.back() = hi;
    h.counts.assign(binCount, 0);
    for (double v : values) {
        if (!(v >= lo && v <= hi)) continue;
        auto bin = static_cast<std::size_t>((v - lo) / width);
        h.counts[std::min(bin, binCount - 1)]++;
    }
    return h;
}

std::string report_json(const DistortionReport& r) {
    nlohmann::ordered_json j;
    j["faceCount"] = r.faceCount;
    j["foldedCount"] = r.foldedCount;
    j["stats"]["absMu"] = stats_json(r.absMu);
    j["stats"]["epsAngleT"] = stats_json(r.epsAngleT);
    j["stats"]["epsMuT"] = stats_json(r.epsMuT);
    j["histograms"]["absMu"] = histogram_json(r.absMuHist);
    j["histograms"]["epsAngleT"] = histogram_json(r.epsAngleTHist);
    j["histograms"]["epsMuT"] = histogram_json(r.epsMuTHist);
    j["boundViolations"] = r.boundViolations;
    j["meta"]["source"] = r.meta.source;
    j["meta"]["target"] = r.meta.target;
    j["meta"]["timestamp"] = r.meta.timestamp;
    j["meta"]["toolVersion"] = r.meta.toolVersion;
    return j.dump(2) + "\n";
}

std::string report_csv(const DistortionReport& r) {
    std::ostringstream out;
    out << "face_id,abs_mu,k,eps_mu,eps_angle_t,corner_0,corner_1,corner_2,folded\n";
    for (std::size_t f = 0; f < r.faceCount; ++f) {
        const bool folded = r.beltrami.is_folded(f);
        out << f << ',' << num(r.beltrami.absMu[f]) << ',';
        if (!folded) out << num(r.beltrami.K[f]);
        out << ',';
        if (!folded) out << num(r.beltrami.epsMu[f]);
        out << ',' << num(r.angular.faceAvg[f]);
        for (double c : r.angular.corner[f]) out << ',' << num(c);
        out << ',' << (folded ? 1 : 0) << '\n';
    }
    return out.str();
}

void export_report(const DistortionReport& r, const std::filesystem::path& path, ReportFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError("cannot open " + path.string() + " for writing");
    out << (format == ReportFormat::JSON ? report_json(r) : report_csv(r));
    out.flush();
    if (!out) throw IOError("write failed for " + path.string());
}

Rgb colormap(double value, double lo, double hi) {
    double t = hi > lo ? (value - lo) / (hi - lo) : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const auto channel = [](double x) { return static_cast<std::uint8_t>(std::lround(255.0 * x)); };
    return {channel(t), 0, channel(1.0 - t)};
}

void export_colored_mesh(const MeshMap& map, const DistortionReport& r, ReportField field,
                         const std::filesystem::path& path, std::optional<std::pair<double, double>> colormapRange) {
    const auto& values = r.values(field);
    const auto& folded = r.beltrami.folded;
    double lo = 0.0, hi = 0.0;
    if (colormapRange) {
        std::tie(lo, hi) = *colormapRange;
    } else {
        for (std::size_t f = 0; f < values.size(); ++f)
            if (!folded[f]) hi = std::max(hi, values[f]);
    }
    std::vector<Rgb> colors(values.size());
    for (std::size_t f = 0; f < values.size(); ++f)
        colors[f] = folded[f] ? kFoldedColor : colormap(values[f], lo, hi);
    save_mesh(map.target(), path, MeshFormat::PLY, colors);
}

}  // namespace qcdist
