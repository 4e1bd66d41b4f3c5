#include "qcdist/errors.hpp"
#include "qcdist/primitives.hpp"
#include "qcdist/report.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qcdist {
namespace {

using testing::kPi;

MeshMap squash_map(const TriMesh& mesh) {
    return MeshMap(mesh, testing::transformed(mesh, [](const Vec3& p) { return Vec3(p.x(), p.y() / 2, 0); }));
}

/// Three disjoint triangles under a fixed affine map, with the middle one flipped.
MeshMap one_flipped_map() {
    std::vector<Vec3> v;
    std::vector<Face> faces;
    for (Index k = 0; k < 3; ++k) {
        const Vec3 o(3.0 * k, 0, 0);
        v.insert(v.end(), {o, o + Vec3(1, 0.1 * k, 0), o + Vec3(0.3, 1, 0)});
        faces.push_back({3 * k, 3 * k + 1, 3 * k + 2});
    }
    std::vector<Vec3> w;
    for (const auto& p : v) w.emplace_back(1.5 * p.x() + 0.2 * p.y(), 0.8 * p.y() + 0.1 * p.x() * p.x(), 0);
    std::swap(w[4], w[5]);
    return MeshMap(TriMesh(v, faces), TriMesh(w, faces));
}

/// Smooth warp of the unit square whose Jacobian stays close to the identity.
MeshMap gentle_warp(const TriMesh& mesh, double amplitude) {
    return MeshMap(mesh, testing::transformed(mesh, [&](const Vec3& p) {
        return Vec3(p.x() + amplitude * std::sin(2 * p.y()), p.y() + amplitude * std::cos(3 * p.x()), 0);
    }));
}

std::string strip_timestamp(std::string json) {
    auto j = nlohmann::ordered_json::parse(json);
    j["meta"].erase("timestamp");
    return j.dump();
}

TEST(Summarize, IdentityIsZero) {
    const auto mesh = make_ring_disk(6);
    const auto r = summarize(MeshMap(mesh, mesh));
    EXPECT_EQ(r.faceCount, mesh.num_faces());
    EXPECT_EQ(r.foldedCount, 0u);
    EXPECT_EQ(r.boundViolations, 0u);
    for (auto f : {ReportField::AbsMu, ReportField::EpsAngleT, ReportField::EpsMuT}) {
        EXPECT_LT(r.stats(f).max, 1e-12);
        EXPECT_LT(r.stats(f).mean, 1e-12);
    }
}

TEST(Summarize, GlobalSquash) {
    const auto map = squash_map(make_grid(6, 5));
    const auto r = summarize(map);
    EXPECT_NEAR(r.absMu.mean, 1.0 / 3, 1e-10);
    EXPECT_NEAR(r.absMu.max, 1.0 / 3, 1e-10);
    EXPECT_NEAR(r.absMu.std, 0.0, 1e-10);
    EXPECT_NEAR(r.epsMuT.mean, 0.679674, 1e-6);
    EXPECT_LE(r.epsAngleT.mean, 0.679674);
    EXPECT_EQ(r.boundViolations, 0u);

    // Oracle: per-face mean of law-of-cosines corner differences.
    double sum = 0;
    const auto& src = map.source();
    const auto& dst = map.target();
    for (std::size_t f = 0; f < src.num_faces(); ++f) {
        const auto& t = src.face(f);
        double face = 0;
        for (int k = 0; k < 3; ++k) {
            const Index a = t[k], b = t[(k + 1) % 3], c = t[(k + 2) % 3];
            face += std::abs(testing::law_of_cosines_angle(dst.vertex(a), dst.vertex(b), dst.vertex(c)) -
                             testing::law_of_cosines_angle(src.vertex(a), src.vertex(b), src.vertex(c)));
        }
        sum += face / 3;
    }
    EXPECT_NEAR(r.epsAngleT.mean, sum / static_cast<double>(src.num_faces()), 1e-12);
}

TEST(Summarize, FlippedFaceExcludedFromStats) {
    const auto map = one_flipped_map();
    const auto r = summarize(map);
    EXPECT_EQ(r.foldedCount, 1u);
    EXPECT_EQ(r.faceCount, 3u);
    const double m0 = r.beltrami.absMu[0], m2 = r.beltrami.absMu[2];
    EXPECT_NEAR(r.absMu.mean, (m0 + m2) / 2, 1e-15);
    EXPECT_DOUBLE_EQ(r.absMu.max, std::max(m0, m2));
    EXPECT_NEAR(r.absMu.std, std::abs(m0 - m2) / 2, 1e-15);
    std::size_t histTotal = 0;
    for (auto c : r.absMuHist.counts) histTotal += c;
    EXPECT_EQ(histTotal, 2u);
    EXPECT_TRUE(std::isnan(r.values(ReportField::EpsMuT)[1]));
}

TEST(Histogram, Examples) {
    EXPECT_EQ(histogram({0, 0, 0}, 2, std::pair{0.0, 1.0}).counts, (std::vector<std::size_t>{3, 0}));
    EXPECT_EQ(histogram({0.1, 0.9}, 2, std::pair{0.0, 1.0}).counts, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(histogram({1.0}, 4, std::pair{0.0, 1.0}).counts, (std::vector<std::size_t>{0, 0, 0, 1}));
    const auto h = histogram({0.5, 2.0}, 4);
    EXPECT_EQ(h.binEdges, (std::vector<double>{0, 0.5, 1, 1.5, 2}));
    EXPECT_EQ(h.counts, (std::vector<std::size_t>{0, 1, 0, 1}));
    EXPECT_EQ(histogram({0, 0}, 3).binEdges.back(), 1.0);
    EXPECT_EQ(histogram({-1, 0.5, 3}, 2, std::pair{0.0, 1.0}).counts, (std::vector<std::size_t>{0, 1}));
    EXPECT_THROW(histogram({}, 3), EmptyInput);
    EXPECT_THROW(histogram({1.0}, 0), DomainError);
}

TEST(Histogram, CountsEveryInRangeValue) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 3);
    std::vector<double> v(1000);
    for (auto& x : v) x = u(rng);
    for (std::size_t bins : {1u, 7u, 50u}) {
        const auto h = histogram(v, bins);
        std::size_t total = 0;
        for (std::size_t b = 0; b < bins; ++b) {
            total += h.counts[b];
            std::size_t inside = 0;
            for (double x : v)
                if (x >= h.binEdges[b] && (x < h.binEdges[b + 1] || b + 1 == bins)) ++inside;
            EXPECT_EQ(h.counts[b], inside);
        }
        EXPECT_EQ(total, v.size());
    }
}

TEST(Export, JsonRoundTrip) {
    const auto r = summarize(gentle_warp(make_grid(8, 8), 0.05), {.bins = 10, .threads = 1, .meta = {"a.obj", "b.obj", "t0"}});
    const auto dir = testing::temp_dir("report_json");
    export_report(r, dir / "r.json", ReportFormat::JSON);
    std::ifstream in(dir / "r.json");
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["faceCount"].get<std::size_t>(), r.faceCount);
    EXPECT_EQ(j["foldedCount"].get<std::size_t>(), 0u);
    const std::pair<const char*, const FieldStats*> fields[] = {
        {"absMu", &r.absMu}, {"epsAngleT", &r.epsAngleT}, {"epsMuT", &r.epsMuT}};
    for (const auto& [name, s] : fields) {
        const auto& js = j["stats"][name];
        EXPECT_NEAR(js["mean"].get<double>(), s->mean, 1e-15);
        EXPECT_NEAR(js["max"].get<double>(), s->max, 1e-15);
        EXPECT_NEAR(js["min"].get<double>(), s->min, 1e-15);
        EXPECT_NEAR(js["std"].get<double>(), s->std, 1e-15);
        EXPECT_EQ(j["histograms"][name]["counts"].size(), 10u);
        EXPECT_EQ(j["histograms"][name]["binEdges"].size(), 11u);
    }
    EXPECT_EQ(j["meta"]["source"], "a.obj");
    EXPECT_EQ(j["meta"]["toolVersion"], QCDIST_VERSION_STRING);

    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    const auto ordered = nlohmann::ordered_json::parse(report_json(r));
    std::vector<std::string> order;
    for (auto it = ordered.begin(); it != ordered.end(); ++it) order.push_back(it.key());
    EXPECT_EQ(order, (std::vector<std::string>{"faceCount", "foldedCount", "stats", "histograms", "boundViolations", "meta"}));
}

TEST(Export, AllFoldedGivesNullStats) {
    const auto src = testing::equilateral();
    std::vector<Vec3> w = src.vertices();
    std::swap(w[1], w[2]);
    const auto r = summarize(MeshMap(src, src.with_vertices(w)));
    const auto j = nlohmann::json::parse(report_json(r));
    EXPECT_EQ(j["foldedCount"], 1);
    EXPECT_TRUE(j["stats"]["absMu"]["mean"].is_null());
    EXPECT_TRUE(j["histograms"]["absMu"]["counts"].empty());
}

TEST(Export, CsvRowsAndFoldedCells) {
    const auto r = summarize(one_flipped_map());
    const auto dir = testing::temp_dir("report_csv");
    export_report(r, dir / "r.csv", ReportFormat::CSV);
    std::ifstream in(dir / "r.csv");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    ASSERT_EQ(lines.size(), r.faceCount + 1);
    EXPECT_EQ(lines[0], "face_id,abs_mu,k,eps_mu,eps_angle_t,corner_0,corner_1,corner_2,folded");
    auto cells = [](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) out.push_back(c);
        if (!line.empty() && line.back() == ',') out.emplace_back();
        return out;
    };
    const auto folded = cells(lines[2]);
    ASSERT_EQ(folded.size(), 9u);
    EXPECT_EQ(folded[0], "1");
    EXPECT_TRUE(folded[2].empty());
    EXPECT_TRUE(folded[3].empty());
    EXPECT_EQ(folded[8], "1");
    const auto good = cells(lines[1]);
    EXPECT_NEAR(std::stod(good[1]), r.beltrami.absMu[0], 1e-15);
    EXPECT_FALSE(good[2].empty());
    EXPECT_EQ(good[8], "0");
    EXPECT_THROW(export_report(r, dir / "missing" / "r.csv", ReportFormat::CSV), IOError);
}

TEST(Colormap, EndpointsAndMidpoint) {
    EXPECT_EQ(colormap(0.0, 0.0, 1.0), (Rgb{0, 0, 255}));
    EXPECT_EQ(colormap(1.0, 0.0, 1.0), (Rgb{255, 0, 0}));
    EXPECT_EQ(colormap(0.5, 0.0, 1.0), (Rgb{128, 0, 128}));
    EXPECT_EQ(colormap(-3.0, 0.0, 1.0), (Rgb{0, 0, 255}));
    EXPECT_EQ(colormap(9.0, 0.0, 1.0), (Rgb{255, 0, 0}));
}

std::vector<Rgb> read_ply_face_colors(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::string line;
    std::size_t nv = 0, nf = 0;
    while (std::getline(in, line) && line != "end_header") {
        std::istringstream ss(line);
        std::string a, b;
        std::size_t n;
        if (ss >> a >> b >> n && a == "element") (b == "vertex" ? nv : nf) = n;
    }
    for (std::size_t i = 0; i < nv; ++i) std::getline(in, line);
    std::vector<Rgb> colors;
    for (std::size_t i = 0; i < nf; ++i) {
        int k, a, b, c, r, g, bl;
        in >> k >> a >> b >> c >> r >> g >> bl;
        colors.push_back({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(bl)});
    }
    return colors;
}

TEST(Colormap, ColoredMeshExport) {
    const auto dir = testing::temp_dir("colored");
    const auto squash = squash_map(make_grid(3, 3));
    const auto r = summarize(squash);
    export_colored_mesh(squash, r, ReportField::AbsMu, dir / "c.ply");
    const auto colors = read_ply_face_colors(dir / "c.ply");
    ASSERT_EQ(colors.size(), squash.source().num_faces());
    for (const auto& c : colors) EXPECT_EQ(c, colors.front());

    const auto flipped = one_flipped_map();
    const auto rf = summarize(flipped);
    export_colored_mesh(flipped, rf, ReportField::EpsMuT, dir / "f.ply", std::pair{0.0, 1.0});
    const auto fc = read_ply_face_colors(dir / "f.ply");
    ASSERT_EQ(fc.size(), 3u);
    EXPECT_EQ(fc[1], kFoldedColor);
    EXPECT_NE(fc[0], kFoldedColor);
    EXPECT_THROW(export_colored_mesh(flipped, rf, ReportField::AbsMu, dir / "no" / "f.ply"), IOError);
}

TEST(Report, DeterministicApartFromTimestamp) {
    const auto map = gentle_warp(make_ring_disk(20), 0.04);
    SummarizeOptions a{.threads = 1, .meta = {"s", "t", "2026-01-01T00:00:00Z"}};
    SummarizeOptions b{.threads = 3, .meta = {"s", "t", "2026-02-02T00:00:00Z"}};
    const auto ja = report_json(summarize(map, a)), jb = report_json(summarize(map, b));
    EXPECT_NE(ja, jb);
    EXPECT_EQ(strip_timestamp(ja), strip_timestamp(jb));
    EXPECT_EQ(report_csv(summarize(map, a)), report_csv(summarize(map, b)));
}

// Per face every corner stays within ε_μ, so both aggregates are ordered.
TEST(Report, TableOrderingAndSmallMuBound) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> amp(0.005, 0.2);
    const auto mesh = make_grid(12, 12);
    int smallCases = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = summarize(gentle_warp(mesh, amp(rng)));
        ASSERT_EQ(r.foldedCount, 0u);
        EXPECT_EQ(r.boundViolations, 0u);
        EXPECT_LE(r.epsAngleT.max, r.epsMuT.max + kBoundTolerance);
        EXPECT_LE(r.epsAngleT.mean, r.epsMuT.mean + kBoundTolerance);
        if (r.absMu.max <= 0.1) {
            ++smallCases;
            EXPECT_GE(r.epsMuT.mean, 2 * r.absMu.mean);
            EXPECT_LE(r.epsMuT.mean, 2 * r.absMu.mean * (1 + r.absMu.max * r.absMu.max));
        }
    }
    EXPECT_GT(smallCases, 0);
}

}  // namespace
}  // namespace qcdist
