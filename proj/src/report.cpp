#include "tracecx/report.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tracecx/error.hpp"

namespace tracecx {

using nlohmann::json;

namespace {

ResampleMode mode_or_throw(const json& j) {
    try {
        return resample_mode_from_string(j.get<std::string>());
    } catch (const ConfigError& e) {
        throw ParseError(e.what());
    }
}

json seed_json(RngSeed seed) { return {{"seed", seed.seed}, {"stream", seed.stream}}; }

RngSeed seed_from(const json& j) {
    return {j.at("seed").get<std::uint64_t>(), j.value("stream", std::uint64_t{0})};
}

}  // namespace

json to_json(const CompressorHandle& c) {
    json j{{"name", c.name()}, {"level", c.level}};
    if (c.backend == Backend::lzma) {
        j["format"] = "lzma2-raw";
        j["dict_size"] = c.dict_size;
        j["nice_len"] = c.nice_len;
        j["lc"] = c.lc;
        j["lp"] = c.lp;
        j["pb"] = c.pb;
        j["extreme"] = c.extreme;
    } else {
        j["format"] = "deflate-raw";
        j["window_bits"] = c.window_bits;
    }
    return j;
}

CompressorHandle compressor_from_json(const json& j) {
    CompressorHandle c = compressor_from_name(j.at("name").get<std::string>());
    c.level = j.value("level", c.level);
    c.dict_size = j.value("dict_size", c.dict_size);
    c.nice_len = j.value("nice_len", c.nice_len);
    c.lc = j.value("lc", c.lc);
    c.lp = j.value("lp", c.lp);
    c.pb = j.value("pb", c.pb);
    c.extreme = j.value("extreme", c.extreme);
    c.window_bits = j.value("window_bits", c.window_bits);
    return c;
}

json to_json(const ComplexityPoint& p) {
    return {
        {"temporal", p.temporal},
        {"non_temporal", p.non_temporal},
        {"overall", p.overall},
        {"sizes",
         {{"original", p.original_size},
          {"shuffled_mean", p.shuffled_mean},
          {"uniform_mean", p.uniform_mean},
          {"shuffled", p.shuffled_sizes},
          {"uniform", p.uniform_sizes}}},
        {"length", p.length},
        {"n", p.n},
        {"column_count", p.column_count},
        {"resample", std::string(to_string(p.resample))},
        {"ratio_above_one", p.ratio_above_one},
        {"warnings", p.warnings},
    };
}

ComplexityPoint point_from_json(const json& j) {
    ComplexityPoint p;
    p.temporal = j.at("temporal").get<double>();
    p.non_temporal = j.at("non_temporal").get<double>();
    p.overall = j.at("overall").get<double>();
    const auto& sizes = j.at("sizes");
    p.original_size = sizes.at("original").get<std::size_t>();
    p.shuffled_mean = sizes.at("shuffled_mean").get<double>();
    p.uniform_mean = sizes.at("uniform_mean").get<double>();
    p.shuffled_sizes = sizes.at("shuffled").get<std::vector<std::size_t>>();
    p.uniform_sizes = sizes.at("uniform").get<std::vector<std::size_t>>();
    p.length = j.at("length").get<std::size_t>();
    p.n = j.at("n").get<std::size_t>();
    p.column_count = j.at("column_count").get<int>();
    p.resample = mode_or_throw(j.at("resample"));
    p.ratio_above_one = j.value("ratio_above_one", false);
    p.warnings = j.value("warnings", std::vector<std::string>{});
    return p;
}

json to_json(const AnalysisReport& r) {
    json streams_shuffle = json::array(), streams_uniform = json::array();
    for (std::size_t i = 0; i < r.trials; ++i) {
        streams_shuffle.push_back(shuffle_seed(r.seed, i).stream);
        streams_uniform.push_back(resample_seed(r.seed, i).stream);
    }
    json j{
        {"tool", {{"name", "tracecx"}, {"version", tool_version}}},
        {"trace", {{"name", r.trace_name}, {"path", r.trace_path}}},
        {"compressor", to_json(r.compressor)},
        {"settings",
         {{"trials", r.trials},
          {"seed", seed_json(r.seed)},
          {"resample", std::string(to_string(r.resample_requested))},
          {"trial_streams", {{"shuffle", streams_shuffle}, {"uniform", streams_uniform}}}}},
        {"point", to_json(r.point)},
    };
    if (r.slices) {
        j["slices"] = {{"source", to_json(r.slices->source)},
                       {"destination", to_json(r.slices->destination)}};
    }
    if (!r.created_at.empty()) j["created_at"] = r.created_at;
    return j;
}

AnalysisReport report_from_json(const json& j) {
    try {
        AnalysisReport r;
        r.trace_name = j.at("trace").at("name").get<std::string>();
        r.trace_path = j.at("trace").value("path", std::string{});
        r.compressor = compressor_from_json(j.at("compressor"));
        const auto& settings = j.at("settings");
        r.trials = settings.at("trials").get<std::size_t>();
        r.seed = seed_from(settings.at("seed"));
        r.resample_requested = mode_or_throw(settings.at("resample"));
        r.point = point_from_json(j.at("point"));
        if (j.contains("slices")) {
            r.slices = SlicePoints{point_from_json(j["slices"].at("source")),
                                   point_from_json(j["slices"].at("destination"))};
        }
        r.created_at = j.value("created_at", std::string{});
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    } catch (const ConfigError& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

AnalysisReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open report '" + path + "'");
    try {
        return report_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_report(const AnalysisReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write report '" + path + "'");
    out << to_json(report).dump(2) << '\n';
}

json to_json(const GeneratorSpec& spec, const std::string& matrix_file) {
    json j{
        {"name", spec.name},
        {"repeat_p", spec.repeat_p},
        {"length", spec.length},
        {"seed", seed_json(spec.seed)},
        {"n", spec.matrix.n()},
    };
    if (matrix_file.empty()) {
        json cells = json::array();
        for (const auto& c : spec.matrix.cells())
            cells.push_back(json::array({c.source, c.destination, c.probability}));
        j["matrix"] = std::move(cells);
    } else {
        j["matrix_file"] = matrix_file;
    }
    if (spec.zipf_exponent) j["zipf_exponent"] = *spec.zipf_exponent;
    if (spec.target_x) j["target_x"] = *spec.target_x;
    if (spec.target_y) j["target_y"] = *spec.target_y;
    return j;
}

GeneratorSpec spec_from_json(const json& j, const std::string& base_dir) {
    try {
        const std::size_t n = j.at("n").get<std::size_t>();
        std::optional<TrafficMatrix> matrix;
        if (j.contains("matrix")) {
            std::vector<MatrixCell> cells;
            for (const auto& c : j.at("matrix")) {
                cells.push_back({c.at(0).get<EndpointId>(), c.at(1).get<EndpointId>(),
                                 c.at(2).get<double>()});
            }
            matrix.emplace(std::move(cells), n);
        } else if (j.contains("matrix_file")) {
            std::filesystem::path file = j.at("matrix_file").get<std::string>();
            if (file.is_relative() && !base_dir.empty()) file = std::filesystem::path(base_dir) / file;
            std::ifstream in(file);
            if (!in) throw ParseError("cannot open matrix file '" + file.string() + "'");
            matrix.emplace(read_matrix_triplets(in, n));
        } else {
            throw ParseError("generator spec needs \"matrix\" or \"matrix_file\"");
        }
        GeneratorSpec spec;
        spec.matrix = std::move(*matrix);
        spec.name = j.value("name", spec.name);
        spec.repeat_p = j.at("repeat_p").get<double>();
        spec.length = j.at("length").get<std::size_t>();
        spec.seed = seed_from(j.at("seed"));
        if (j.contains("zipf_exponent")) spec.zipf_exponent = j["zipf_exponent"].get<double>();
        if (j.contains("target_x")) spec.target_x = j["target_x"].get<double>();
        if (j.contains("target_y")) spec.target_y = j["target_y"].get<double>();
        validate(spec);
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed generator spec: ") + e.what());
    }
}

GeneratorSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return spec_from_json(j, std::filesystem::path(path).parent_path().string());
}

void save_spec(const GeneratorSpec& spec, const std::string& path,
               const std::string& matrix_file) {
    if (!matrix_file.empty()) {
        std::filesystem::path target = matrix_file;
        if (target.is_relative())
            target = std::filesystem::path(path).parent_path() / target;
        std::ofstream m(target);
        if (!m) throw ConfigError("cannot write matrix file '" + target.string() + "'");
        write_matrix_triplets(spec.matrix, m);
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write spec '" + path + "'");
    out << to_json(spec, matrix_file).dump(2) << '\n';
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string format_report_table(const AnalysisReport& r) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    auto row = [&](const std::string& label, const ComplexityPoint& p) {
        os << std::left << std::setw(24) << label << std::right << std::setw(10) << p.temporal
           << std::setw(14) << p.non_temporal << std::setw(10) << p.overall << std::setw(12)
           << p.original_size << '\n';
    };
    os << "trace: " << r.trace_name << "  (t = " << r.point.length << ", n = " << r.point.n
       << ", compressor = " << r.compressor.name() << ", trials = " << r.trials
       << ", seed = " << r.seed.seed << ")\n";
    os << std::left << std::setw(24) << "point" << std::right << std::setw(10) << "T"
       << std::setw(14) << "NT" << std::setw(10) << "Psi" << std::setw(12) << "C(trace)" << '\n';
    row("pairs", r.point);
    if (r.slices) {
        row("sources", r.slices->source);
        row("destinations", r.slices->destination);
    }
    auto warn = [&](const std::string& label, const ComplexityPoint& p) {
        for (const auto& w : p.warnings) os << "warning (" << label << "): " << w << '\n';
    };
    warn("pairs", r.point);
    if (r.slices) {
        warn("sources", r.slices->source);
        warn("destinations", r.slices->destination);
    }
    return os.str();
}

}  // namespace tracecx
