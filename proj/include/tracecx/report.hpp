#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tracecx/complexity.hpp"
#include "tracecx/compressor.hpp"
#include "tracecx/generator.hpp"

namespace tracecx {

inline constexpr const char* tool_version = "0.3.0";

/// Everything `tracecx analyze` knows about one trace. Re-running with the
/// recorded compressor, trials, seed and resample mode reproduces the sizes
/// exactly.
struct AnalysisReport {
    std::string trace_name;
    std::string trace_path;
    CompressorHandle compressor;
    std::size_t trials = 3;
    RngSeed seed{};
    ResampleMode resample_requested = ResampleMode::automatic;
    ComplexityPoint point;
    std::optional<SlicePoints> slices;
    /// ISO-8601 UTC; empty when suppressed.
    std::string created_at;
};

nlohmann::json to_json(const CompressorHandle& compressor);
CompressorHandle compressor_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ComplexityPoint& point);
ComplexityPoint point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);

/// Throws ParseError naming the file on unreadable or malformed input.
AnalysisReport load_report(const std::string& path);
void save_report(const AnalysisReport& report, const std::string& path);

/// Matrix inline as [source, destination, probability] triples, unless
/// `matrix_file` is given, in which case the matrix is written there as CSV
/// triplets and referenced by path.
nlohmann::json to_json(const GeneratorSpec& spec, const std::string& matrix_file = {});

/// Relative "matrix_file" paths are resolved against `base_dir`.
GeneratorSpec spec_from_json(const nlohmann::json& j, const std::string& base_dir = {});

GeneratorSpec load_spec(const std::string& path);
void save_spec(const GeneratorSpec& spec, const std::string& path,
               const std::string& matrix_file = {});

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

/// Human-readable table of a report's points.
std::string format_report_table(const AnalysisReport& report);

}  // namespace tracecx
