#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tracecx/error.hpp"
#include "tracecx/generator.hpp"
#include "tracecx/report.hpp"
#include "tracecx/svg.hpp"

using namespace tracecx;
namespace fs = std::filesystem;

namespace {

ComplexityPoint sample_point() {
    ComplexityPoint p;
    p.temporal = 0.123456789012345678;
    p.non_temporal = 1.0 / 3.0;
    p.overall = p.temporal * p.non_temporal;
    p.original_size = 1234;
    p.shuffled_sizes = {10000, 10010, 9990};
    p.uniform_sizes = {30000, 30001, 29999};
    p.shuffled_mean = 10000;
    p.uniform_mean = 30000;
    p.length = 5000;
    p.n = 16;
    p.resample = ResampleMode::columnwise;
    p.warnings = {"something odd"};
    return p;
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / "tracecx-report-test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("report JSON round trip") {
    AnalysisReport r;
    r.trace_name = "t";
    r.trace_path = "data/t.csv";
    r.compressor = compressor_from_name("deflate");
    r.trials = 3;
    r.seed = {99, 4};
    r.point = sample_point();
    r.slices = SlicePoints{sample_point(), sample_point()};
    r.created_at = "2026-01-01T00:00:00Z";

    auto path = scratch("r.json").string();
    save_report(r, path);
    auto back = load_report(path);
    CHECK(back.trace_path == r.trace_path);
    CHECK(back.compressor == r.compressor);
    CHECK(back.seed == r.seed);
    CHECK(back.point.temporal == r.point.temporal);
    CHECK(back.point.non_temporal == r.point.non_temporal);
    CHECK(back.point.uniform_sizes == r.point.uniform_sizes);
    CHECK(back.point.resample == ResampleMode::columnwise);
    CHECK(back.point.warnings == r.point.warnings);
    REQUIRE(back.slices.has_value());
    CHECK(back.slices->destination.overall == r.point.overall);
    CHECK(back.created_at == r.created_at);
    CHECK(to_json(back) == to_json(r));
}

TEST_CASE("malformed reports are rejected") {
    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse(R"({"point": 3})")), ParseError);
    auto path = scratch("broken.json");
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_report(path.string()), ParseError);
    CHECK_THROWS_AS(load_report(scratch("missing.json").string()), Error);
}

TEST_CASE("spec JSON round trip") {
    auto spec = spec_from_target({0.4, 0.4, 8, false}, 777, {5, 2});
    auto back = spec_from_json(to_json(spec));
    CHECK(back.repeat_p == spec.repeat_p);
    CHECK(back.length == 777);
    CHECK(back.seed == spec.seed);
    CHECK(back.zipf_exponent == spec.zipf_exponent);
    CHECK(total_variation(back.matrix, spec.matrix) == 0.0);

    auto a = generate(spec);
    auto b = generate(back);
    CHECK(std::equal(a.entries().begin(), a.entries().end(), b.entries().begin()));
}

TEST_CASE("spec with an external matrix file") {
    auto spec = spec_from_target({0.5, 0.9, 6, false}, 100);
    auto path = scratch("s.spec.json");
    save_spec(spec, path.string(), "s.matrix.csv");
    CHECK(fs::exists(scratch("s.matrix.csv")));
    auto back = load_spec(path.string());
    CHECK(total_variation(back.matrix, spec.matrix) == 0.0);
    CHECK(back.repeat_p == spec.repeat_p);
}

TEST_CASE("map SVG and CSV") {
    std::vector<MapPoint> pts{{"a<b", 0.5, 0.25, 0.125}, {"far", 1.3, -0.1, 1.0}};
    std::ostringstream svg;
    write_map_svg(pts, svg);
    const auto text = svg.str();
    CHECK(text.rfind("<svg", 0) == 0);
    CHECK(text.find("a&lt;b") != std::string::npos);
    CHECK(text.find("<circle") != std::string::npos);

    std::ostringstream again;
    write_map_svg(pts, again);
    CHECK(again.str() == text);

    std::ostringstream csv;
    write_map_csv(pts, csv);
    CHECK(csv.str() ==
          "label,temporal,non_temporal,overall\n"
          "a<b,0.5,0.25,0.125\n"
          "far,1.3,-0.10000000000000001,1\n");
}

TEST_CASE("matrix heatmap") {
    std::ostringstream out;
    write_matrix_svg(zipf_matrix(4, 1.0), out, true);
    CHECK(out.str().find("<rect") != std::string::npos);
}

TEST_CASE("report table mentions the ratios") {
    AnalysisReport r;
    r.trace_name = "t";
    r.point = sample_point();
    auto table = format_report_table(r);
    CHECK(table.find("0.1235") != std::string::npos);
}
