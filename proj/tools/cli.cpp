#include "cli.hpp"

#include "qcdist/errors.hpp"
#include "qcdist/mesh_io.hpp"
#include "qcdist/parameterize.hpp"
#include "qcdist/report.hpp"
#include "qcdist/theory_suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>

namespace qcdist::cli {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
    unsigned threads = 0;
    bool quiet = false;
};

struct AnalyzeOptions {
    std::string source, target;
    std::string reportPath;
    std::string csvPath;
    std::string plyPath;
    std::string field = "abs_mu";
    std::size_t bins = kDefaultHistogramBins;
    bool json = false;
    bool degrees = false;
};

struct ParamOptions {
    std::string source;
    std::string output;
    std::string weights = "uniform";
    bool analyze = false;
};

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt_value(double v, bool angle, bool degrees) {
    char buf[64];
    if (!std::isfinite(v)) return "n/a";
    std::snprintf(buf, sizeof buf, "%.6f", angle && degrees ? v * 180.0 / std::numbers::pi : v);
    return buf;
}

ReportField parse_field(const std::string& name) {
    static const std::map<std::string, ReportField> fields{
        {"abs_mu", ReportField::AbsMu}, {"eps_angle_t", ReportField::EpsAngleT}, {"eps_mu_t", ReportField::EpsMuT}};
    return fields.at(name);
}

/// Runs the library call and maps its exceptions onto exit codes.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "error: parse error: " << e.what() << '\n';
        return kIoError;
    } catch (const IOError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return kSolverError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
}

void warn_orientation(const TriMesh& mesh, const std::string& which, std::ostream& err) {
    const auto bad = inconsistent_orientation_edges(mesh);
    if (!bad.empty())
        err << "warning: " << which << " mesh has " << bad.size()
            << " edges with inconsistent face orientation (not repaired)\n";
}

int analyze_map(const MeshMap& map, const AnalyzeOptions& opt, const GlobalOptions& global, std::ostream& out,
                std::ostream& err) {
    warn_orientation(map.source(), "source", err);

    SummarizeOptions so;
    so.bins = opt.bins;
    so.threads = global.threads;
    so.meta.source = opt.source;
    so.meta.target = opt.target;
    so.meta.timestamp = utc_timestamp();
    const auto report = summarize(map, so);

    std::string reportPath = opt.reportPath;
    if (reportPath.empty() && !opt.json) {
        fs::path t(opt.target);
        reportPath = (t.parent_path() / (t.stem().string() + ".report.json")).string();
    }
    if (!reportPath.empty()) export_report(report, reportPath, ReportFormat::JSON);
    if (!opt.csvPath.empty()) export_report(report, opt.csvPath, ReportFormat::CSV);
    if (!opt.plyPath.empty()) export_colored_mesh(map, report, parse_field(opt.field), opt.plyPath);

    if (report.foldedCount > 0)
        err << "warning: " << report.foldedCount << " folded faces (|mu| >= 1) excluded from statistics\n";
    if (report.boundViolations > 0)
        err << "warning: " << report.boundViolations << " faces exceed the 2 arcsin|mu| angle bound\n";

    if (opt.json) {
        out << report_json(report);
    } else if (!global.quiet) {
        const char* unit = opt.degrees ? "deg" : "rad";
        out << "faces            " << report.faceCount << '\n'
            << "folded           " << report.foldedCount << '\n'
            << "bound violations " << report.boundViolations << '\n'
            << "mean |mu_T|      " << fmt_value(report.absMu.mean, false, false) << '\n'
            << "max  |mu_T|      " << fmt_value(report.absMu.max, false, false) << '\n'
            << "mean eps_angle_T " << fmt_value(report.epsAngleT.mean, true, opt.degrees) << ' ' << unit << '\n'
            << "mean eps_mu_T    " << fmt_value(report.epsMuT.mean, true, opt.degrees) << ' ' << unit << '\n'
            << "max  eps_angle_T " << fmt_value(report.epsAngleT.max, true, opt.degrees) << ' ' << unit << '\n'
            << "max  eps_mu_T    " << fmt_value(report.epsMuT.max, true, opt.degrees) << ' ' << unit << '\n';
        if (!reportPath.empty()) out << "report           " << reportPath << '\n';
    }
    return kOk;
}

int run_analyze(const AnalyzeOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        MeshMap map(load_mesh(opt.source), load_mesh(opt.target));
        return analyze_map(map, opt, global, out, err);
    });
}

int run_param(const ParamOptions& opt, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto mesh = load_mesh(opt.source);
        ParamConfig config;
        config.weights = opt.weights == "cotangent" ? TutteWeights::Cotangent : TutteWeights::Uniform;
        const auto result = tutte_disk(mesh, config);

        std::string output = opt.output;
        if (output.empty()) {
            fs::path s(opt.source);
            output = (s.parent_path() / (s.stem().string() + "_flat.obj")).string();
        }
        save_mesh(result.map.target(), output, format_from_path(output));
        if (!global.quiet)
            out << "flattened " << mesh.num_faces() << " faces (" << result.interiorVertices << " interior, "
                << result.boundaryVertices << " boundary vertices), residual " << result.residual << ", wrote "
                << output << '\n';
        if (!opt.analyze) return static_cast<int>(kOk);
        AnalyzeOptions a;
        a.source = opt.source;
        a.target = output;
        return analyze_map(result.map, a, global, out, err);
    });
}

int run_theory(TheoryConfig config, bool json, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
    if (config.gridSize < kMinTheoryGrid) {
        err << "warning: grid size " << config.gridSize << " below minimum, clamped to " << kMinTheoryGrid << '\n';
        config.gridSize = kMinTheoryGrid;
    }
    return guarded(err, [&] {
        const auto report = run_theory_suite(config);
        if (json) {
            out << theory_report_json(report) << '\n';
        } else if (!global.quiet) {
            print_theory_table(report, out);
        }
        for (const auto& c : report.checks)
            if (c.passed && c.name == "single_case" && !json && !global.quiet)
                out << "single case: " << c.detail << " difference " << c.worstError << '\n';
        for (const auto& c : report.checks)
            if (!c.passed) err << "FAILED " << c.name << ": " << c.detail << " error " << c.worstError << '\n';
        return report.all_passed() ? static_cast<int>(kOk) : static_cast<int>(kCheckFailed);
    });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Beltrami-coefficient and angular-distortion analysis of triangle mesh maps", "qcdist"};
    app.set_version_flag("--version", std::string("qcdist ") + QCDIST_VERSION_STRING);
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--threads", global.threads, "Maximum worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_flag("--quiet", global.quiet, "Suppress summary output");

    AnalyzeOptions analyze;
    auto* analyzeCmd = app.add_subcommand("analyze", "Distortion report for the map source -> target");
    analyzeCmd->fallthrough();
    analyzeCmd->add_option("source", analyze.source, "Source mesh (OBJ/OFF)")->required();
    analyzeCmd->add_option("target", analyze.target, "Target mesh with identical faces")->required();
    analyzeCmd->add_option("--report", analyze.reportPath, "JSON report path (default <target>.report.json)");
    analyzeCmd->add_option("--csv", analyze.csvPath, "Per-face CSV output");
    auto* plyOpt = analyzeCmd->add_option("--ply-out", analyze.plyPath, "Color-coded PLY of the target mesh");
    analyzeCmd->add_option("--field", analyze.field, "Field for --ply-out")
        ->check(CLI::IsMember({"abs_mu", "eps_angle_t", "eps_mu_t"}))
        ->needs(plyOpt);
    analyzeCmd->add_option("--bins", analyze.bins, "Histogram bins")->check(CLI::PositiveNumber);
    analyzeCmd->add_flag("--json", analyze.json, "Write the JSON report to standard output");
    analyzeCmd->add_flag("--degrees", analyze.degrees, "Show angles in degrees (JSON stays in radians)");

    ParamOptions param;
    auto* paramCmd = app.add_subcommand("param", "Tutte disk parameterization");
    paramCmd->fallthrough();
    paramCmd->add_option("source", param.source, "Disk-topology mesh (OBJ/OFF)")->required();
    paramCmd->add_option("-o,--output", param.output, "Flattened mesh path (default <source>_flat.obj)");
    paramCmd->add_option("--weights", param.weights, "Edge weights")->check(CLI::IsMember({"uniform", "cotangent"}));
    paramCmd->add_flag("--analyze", param.analyze, "Also analyze source -> flattened map");

    TheoryConfig theory;
    bool theoryJson = false;
    double theoryK = 0.0, theoryTheta = 0.0;
    auto* theoryCmd = app.add_subcommand("theory", "Check the angle/Beltrami relations against grid oracles");
    theoryCmd->fallthrough();
    theoryCmd->add_option("--seed", theory.seed, "Seed for the randomized checks");
    theoryCmd->add_option("--grid", theory.gridSize, "Orientation grid size (minimum 1000)");
    auto* kOpt = theoryCmd->add_option("--k", theoryK, "Dilatation for a single extra case")->check(CLI::Range(1.0, 1e12));
    auto* thetaOpt =
        theoryCmd->add_option("--theta", theoryTheta, "Angle (radians) for a single extra case")
            ->check(CLI::Range(1e-9, std::numbers::pi - 1e-9));
    theoryCmd->add_flag("--json", theoryJson, "JSON output instead of the table");

    auto* versionCmd = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kUsage);
    }

    if (*versionCmd) {
        out << "qcdist " << QCDIST_VERSION_STRING << '\n';
        return kOk;
    }
    if (*analyzeCmd) return run_analyze(analyze, global, out, err);
    if (*paramCmd) return run_param(param, global, out, err);
    if (kOpt->count() > 0) theory.K = theoryK;
    if (thetaOpt->count() > 0) theory.theta = theoryTheta;
    return run_theory(theory, theoryJson, global, out, err);
}

}  // namespace qcdist::cli
