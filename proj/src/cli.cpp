#include "tracecx/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tracecx/complexity.hpp"
#include "tracecx/entropy.hpp"
#include "tracecx/error.hpp"
#include "tracecx/generator.hpp"
#include "tracecx/report.hpp"
#include "tracecx/svg.hpp"
#include "tracecx/trace.hpp"

namespace tracecx::cli {

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct FormatFlags {
    std::string delimiter = ",";
    std::size_t source_column = 0;
    std::size_t destination_column = 1;
    bool skip_header = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--delimiter", delimiter, "Field delimiter of the trace file");
        cmd->add_option("--src-col", source_column, "0-based source column");
        cmd->add_option("--dst-col", destination_column, "0-based destination column");
        cmd->add_flag("--skip-header", skip_header, "Ignore the first non-blank line");
    }

    CsvOptions options() const {
        std::string d = delimiter == "\\t" || delimiter == "tab" ? "\t" : delimiter;
        if (d.size() != 1) throw UsageError("--delimiter must be a single character");
        return {d[0], source_column, destination_column, skip_header};
    }
};

struct CompressorFlags {
    std::string name;
    int level = -1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--compressor", name,
                        "Compression backend: lzma or deflate (default lzma, or $" +
                            std::string(compressor_env_var) + ")");
        cmd->add_option("--level", level, "Compression level 0-9 (default 9)");
    }

    CompressorHandle handle() const {
        CompressorHandle c = name.empty() ? default_compressor() : compressor_from_name(name);
        if (level >= 0) c.level = level;
        return c;
    }
};

struct TrialFlags {
    std::size_t trials = 3;
    std::uint64_t seed = default_seed;
    std::string resample = "auto";
    unsigned threads = 0;

    void attach(CLI::App* cmd, bool with_seed = true) {
        cmd->add_option("--trials", trials, "Randomization trials averaged per point")
            ->check(CLI::PositiveNumber);
        if (with_seed)
            cmd->add_option("--seed", seed, "Base seed for the shuffle and resample trials");
        cmd->add_option("--resample", resample,
                        "Uniform transform: auto, pair or columnwise (auto switches to "
                        "columnwise when the column ID sets differ by more than 10%)");
        cmd->add_option("--threads", threads, "Compression worker threads (0 = all cores)");
    }

    ComplexityOptions options() const {
        return {trials, RngSeed{seed, 0}, resample_mode_from_string(resample), threads};
    }
};

std::string stem_with(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + suffix)).string();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    return out;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string trace_path;
    FormatFlags format;
    CompressorFlags compressor;
    TrialFlags trials;
    bool slices = false;
    std::string output;
    bool no_timestamp = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    Trace trace = load_trace(a.trace_path, a.format.options());
    AnalysisReport report;
    report.trace_name = std::filesystem::path(a.trace_path).filename().string();
    report.trace_path = a.trace_path;
    report.compressor = a.compressor.handle();
    const auto options = a.trials.options();
    report.trials = options.trials;
    report.seed = options.seed;
    report.resample_requested = options.resample;
    report.point = trace_complexity(trace, report.compressor, options);
    if (a.slices) report.slices = complexity_of_slices(trace, report.compressor, options);
    if (!a.no_timestamp) report.created_at = utc_timestamp();

    const std::string path = a.output.empty() ? stem_with(a.trace_path, ".report.json") : a.output;
    save_report(report, path);
    out << format_report_table(report);
    out << "report: " << path << '\n';
    return exit_ok;
}

// --------------------------------------------------------------- generate

struct GenerateArgs {
    std::vector<double> target;
    std::string preset;
    std::string spec_path;
    std::string fit_path;
    bool degenerate = false;
    std::size_t n_ids = default_n_ids;
    std::size_t length = 1'000'000;
    std::uint64_t seed = default_seed;
    std::string output = "synthetic.csv";
    std::string spec_out;
    std::string matrix_file;
    FormatFlags format;
    CompressorFlags compressor;
    TrialFlags trials;
    CLI::App* cmd = nullptr;
};

GeneratorSpec preset_spec(const std::string& name, std::size_t n_ids, std::size_t length,
                          RngSeed seed) {
    for (auto& p : reference_presets(n_ids, length, seed))
        if (p.name == name) return std::move(p.spec);
    throw UsageError("unknown preset '" + name +
                     "' (expected uniform, skewed, bursty or skewed-bursty)");
}

int cmd_generate(GenerateArgs& a, std::ostream& out) {
    const int sources = (!a.target.empty()) + (!a.preset.empty()) + (!a.spec_path.empty()) +
                        (!a.fit_path.empty());
    if (sources != 1)
        throw UsageError("give exactly one of --target, --preset, --spec or --fit");

    const RngSeed seed{a.seed, 0};
    GeneratorSpec spec;
    if (!a.target.empty()) {
        MapTarget target{a.target[0], a.target[1], a.n_ids, a.degenerate};
        spec = spec_from_target(target, a.length, seed);
        spec.name = "target";
    } else if (!a.preset.empty()) {
        spec = preset_spec(a.preset, a.n_ids, a.length, seed);
    } else if (!a.spec_path.empty()) {
        spec = load_spec(a.spec_path);
        // Flags given explicitly override the file.
        if (a.cmd->count("--length")) spec.length = a.length;
        if (a.cmd->count("--seed")) spec.seed = seed;
    } else {
        Trace original = load_trace(a.fit_path, a.format.options());
        auto options = a.trials.options();
        options.seed = seed;
        auto fit = spec_from_trace(original, a.compressor.handle(), options);
        spec = std::move(fit.spec);
        spec.seed = seed;
        if (a.cmd->count("--length")) spec.length = a.length;
        out << std::setprecision(6) << "measured original: T = " << fit.measured.temporal
            << ", NT = " << fit.measured.non_temporal << ", Psi = " << fit.measured.overall
            << '\n';
        for (const auto& w : fit.warnings) out << "warning: " << w << '\n';
    }

    Trace trace = generate(spec);
    save_trace(trace, a.output);
    const std::string spec_path = a.spec_out.empty() ? stem_with(a.output, ".spec.json") : a.spec_out;
    save_spec(spec, spec_path, a.matrix_file);

    out << std::setprecision(10);
    if (spec.zipf_exponent) out << "zipf exponent: " << *spec.zipf_exponent << '\n';
    out << "repeat probability p: " << spec.repeat_p << '\n';
    const double h = joint_entropy(spec.matrix);
    out << "H(M): " << h << " bits";
    if (spec.matrix.n() >= 2) out << ", y = " << normalized_nontemporal(spec.matrix);
    if (h > 0) out << ", model x = " << model_temporal_ratio(spec.repeat_p, h);
    out << '\n';
    out << "trace: " << a.output << " (" << trace.size() << " entries)\n";
    out << "spec: " << spec_path << '\n';
    return exit_ok;
}

// -------------------------------------------------------------------- map

struct MapArgs {
    std::vector<std::string> reports;
    std::string svg = "complexity-map.svg";
    std::string csv;
    bool slices = false;
};

int cmd_map(const MapArgs& a, std::ostream& out) {
    if (a.reports.empty()) throw UsageError("map needs at least one report");
    std::vector<MapPoint> points;
    for (const auto& path : a.reports) {
        AnalysisReport r = load_report(path);
        const auto& p = r.point;
        points.push_back({r.trace_name, p.temporal, p.non_temporal, p.overall});
        if (a.slices && r.slices) {
            const auto& s = r.slices->source;
            const auto& d = r.slices->destination;
            points.push_back({r.trace_name + " src", s.temporal, s.non_temporal, s.overall});
            points.push_back({r.trace_name + " dst", d.temporal, d.non_temporal, d.overall});
        }
    }
    {
        auto svg = open_out(a.svg);
        write_map_svg(points, svg);
    }
    const std::string csv_path = a.csv.empty() ? stem_with(a.svg, ".csv") : a.csv;
    {
        auto csv = open_out(csv_path);
        write_map_csv(points, csv);
    }
    out << "map: " << a.svg << " (" << points.size() << " points)\npoints: " << csv_path << '\n';
    return exit_ok;
}

// ----------------------------------------------------------------- matrix

struct MatrixArgs {
    std::string trace_path;
    std::string output;
    std::string svg;
    bool log_scale = false;
    bool triplets = false;
    FormatFlags format;
};

int cmd_matrix(const MatrixArgs& a, std::ostream& out) {
    Trace trace = load_trace(a.trace_path, a.format.options());
    TrafficMatrix m = empirical_matrix(trace);
    const std::string path = a.output.empty() ? stem_with(a.trace_path, ".matrix.csv") : a.output;
    {
        auto csv = open_out(path);
        if (a.triplets)
            write_matrix_triplets(m, csv);
        else
            write_matrix_dense(m, csv, trace.labels());
    }
    if (!a.svg.empty()) {
        auto svg = open_out(a.svg);
        write_matrix_svg(m, svg, a.log_scale);
    }
    out << std::setprecision(6) << "pairs: " << m.support_size() << ", n = " << m.n()
        << ", H(M) = " << joint_entropy(m) << " bits";
    if (m.n() >= 2) out << ", y = " << normalized_nontemporal(m);
    out << "\nmatrix: " << path << '\n';
    if (!a.svg.empty()) out << "heatmap: " << a.svg << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- presets

struct PresetArgs {
    std::size_t n_ids = default_n_ids;
    std::size_t length = default_preset_length;
    std::uint64_t seed = default_seed;
    std::string dir = ".";
};

int cmd_presets(const PresetArgs& a, std::ostream& out) {
    std::filesystem::create_directories(a.dir);
    for (const auto& p : reference_presets(a.n_ids, a.length, RngSeed{a.seed, 0})) {
        auto base = std::filesystem::path(a.dir) / p.name;
        Trace trace = generate(p.spec);
        save_trace(trace, base.string() + ".csv");
        save_spec(p.spec, base.string() + ".spec.json");
        out << std::setprecision(6) << p.name << ": target (" << p.target.x << ", "
            << p.target.y << "), p = " << p.spec.repeat_p;
        if (p.spec.zipf_exponent) out << ", zipf exponent = " << *p.spec.zipf_exponent;
        out << " -> " << base.string() << ".csv\n";
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"tracecx: temporal and non-temporal complexity of packet traces"};
    app.name("tracecx");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.set_version_flag("--version", std::string(tool_version));

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Measure T, NT and Psi of a trace and write a JSON report");
    an->add_option("trace", analyze.trace_path, "Trace file (CSV)")->required();
    analyze.format.attach(an);
    analyze.compressor.attach(an);
    analyze.trials.attach(an);
    an->add_flag("--slices", analyze.slices, "Also measure the source and destination columns");
    an->add_option("-o,--output", analyze.output, "Report path (default <trace>.report.json)");
    an->add_flag("--no-timestamp", analyze.no_timestamp, "Omit created_at from the report");

    GenerateArgs gen;
    auto* ge = app.add_subcommand("generate", "Synthesize a trace with the repeat-chain model");
    gen.cmd = ge;
    ge->add_option("--target", gen.target, "Map point X Y to emulate")->expected(2);
    ge->add_option("--preset", gen.preset, "uniform, skewed, bursty or skewed-bursty");
    ge->add_option("--spec", gen.spec_path, "Generator spec JSON to replay");
    ge->add_option("--fit", gen.fit_path, "Fit the model to this trace");
    ge->add_flag("--degenerate", gen.degenerate, "Allow y = 0 (single-pair matrix)");
    ge->add_option("--n", gen.n_ids, "Number of endpoint IDs for targets and presets");
    ge->add_option("--length", gen.length, "Entries to generate");
    ge->add_option("--seed", gen.seed, "Generator seed (also seeds the --fit analysis)");
    ge->add_option("-o,--output", gen.output, "Trace output path");
    ge->add_option("--spec-out", gen.spec_out, "Spec output path (default <output>.spec.json)");
    ge->add_option("--matrix-file", gen.matrix_file,
                   "Write the matrix as CSV triplets here and reference it from the spec");
    gen.format.attach(ge);
    gen.compressor.attach(ge);
    gen.trials.attach(ge, false);

    MapArgs map;
    auto* mp = app.add_subcommand("map", "Plot reports on the complexity map (SVG + CSV)");
    mp->add_option("reports", map.reports, "Report JSON files")->required();
    mp->add_option("--svg", map.svg, "SVG output path");
    mp->add_option("--csv", map.csv, "CSV output path (default <svg>.csv)");
    mp->add_flag("--slices", map.slices, "Include source/destination slice points");

    MatrixArgs mat;
    auto* mx = app.add_subcommand("matrix", "Write the empirical traffic matrix");
    mx->add_option("trace", mat.trace_path, "Trace file (CSV)")->required();
    mx->add_option("-o,--output", mat.output, "CSV output path (default <trace>.matrix.csv)");
    mx->add_option("--svg", mat.svg, "Optional SVG heatmap path");
    mx->add_flag("--log", mat.log_scale, "Log-scale heatmap colors");
    mx->add_flag("--triplets", mat.triplets, "Write source,destination,probability rows");
    mat.format.attach(mx);

    PresetArgs pre;
    auto* ps = app.add_subcommand("presets", "Generate the four reference traces");
    ps->add_option("--n", pre.n_ids, "Number of endpoint IDs");
    ps->add_option("--length", pre.length, "Entries per trace");
    ps->add_option("--seed", pre.seed, "Generator seed");
    ps->add_option("--dir", pre.dir, "Output directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*an) return cmd_analyze(analyze, out);
        if (*ge) return cmd_generate(gen, out);
        if (*mp) return cmd_map(map, out);
        if (*mx) return cmd_matrix(mat, out);
        if (*ps) return cmd_presets(pre, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const EmptyTraceError& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << '\n';
        return exit_solver;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_solver;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
    return exit_usage;
}

}  // namespace tracecx::cli
