#include <cmath>

#include "doctest.h"
#include "tracecx/error.hpp"
#include "tracecx/generator.hpp"

using namespace tracecx;

namespace {

double repeat_fraction(const Trace& t) {
    std::size_t repeats = 0;
    for (std::size_t i = 1; i < t.size(); ++i) repeats += t.entries()[i] == t.entries()[i - 1];
    return static_cast<double>(repeats) / static_cast<double>(t.size() - 1);
}

GeneratorSpec uniform_spec(std::size_t ids, double p, std::size_t len, std::uint64_t seed = 1) {
    GeneratorSpec spec;
    spec.matrix = zipf_matrix(ids, 0.0);
    spec.repeat_p = p;
    spec.length = len;
    spec.seed = {seed, 0};
    return spec;
}

}  // namespace

TEST_CASE("generate repeat fraction") {
    // Consecutive equal pairs: p plus fresh draws that hit the same pair.
    auto t = generate(uniform_spec(4, 0.9, 100'000));
    CHECK(t.size() == 100'000);
    CHECK(std::abs(repeat_fraction(t) - (0.9 + 0.1 / 16)) < 0.01);

    auto iid = generate(uniform_spec(4, 0.0, 100'000));
    CHECK(std::abs(repeat_fraction(iid) - 1.0 / 16) < 0.01);
}

TEST_CASE("generate extremes") {
    auto frozen = generate(uniform_spec(8, 1.0, 1000));
    for (const auto& e : frozen.entries()) CHECK(e == frozen.entries()[0]);

    GeneratorSpec single;
    single.matrix = degenerate_matrix(4);
    single.length = 10;
    auto d = generate(single);
    for (const auto& e : d.entries()) CHECK(e == TraceEntry{0, 0});
    CHECK(d.ids().n() == 1);  // universe comes from the emitted entries

    auto one = generate(uniform_spec(8, 0.3, 1));
    CHECK(one.size() == 1);
}

TEST_CASE("generate is deterministic per seed") {
    auto a = generate(uniform_spec(16, 0.5, 5000, 3));
    auto b = generate(uniform_spec(16, 0.5, 5000, 3));
    auto c = generate(uniform_spec(16, 0.5, 5000, 4));
    CHECK(std::equal(a.entries().begin(), a.entries().end(), b.entries().begin()));
    CHECK_FALSE(std::equal(a.entries().begin(), a.entries().end(), c.entries().begin()));
}

TEST_CASE("generator validation") {
    auto bad = uniform_spec(4, 1.5, 10);
    CHECK_THROWS_AS(generate(bad), ConfigError);
    bad = uniform_spec(4, 0.5, 0);
    CHECK_THROWS_AS(generate(bad), ConfigError);
}

TEST_CASE("spec_from_target") {
    SUBCASE("uniform corner") {
        auto s = spec_from_target({1.0, 1.0, 16, false}, 1000);
        CHECK(s.repeat_p == 0.0);
        CHECK(normalized_nontemporal(s.matrix) == doctest::Approx(1.0));
    }
    SUBCASE("bursty") {
        auto s = spec_from_target({0.4, 1.0, 16, false}, 1000);
        CHECK(s.repeat_p == doctest::Approx(0.7087856005056282).epsilon(1e-9));
    }
    SUBCASE("skewed and bursty") {
        auto s = spec_from_target({0.4, 0.4, 16, false}, 1000);
        CHECK(normalized_nontemporal(s.matrix) == doctest::Approx(0.4).epsilon(1e-6));
        CHECK(model_temporal_ratio(s.repeat_p, joint_entropy(s.matrix)) == doctest::Approx(0.4));
        CHECK(s.target_x.value() == 0.4);
        CHECK(s.zipf_exponent.has_value());
    }
    SUBCASE("y = 0 needs the degenerate matrix") {
        CHECK_THROWS_AS(spec_from_target({0.5, 0.0, 16, false}), SolverError);
        auto s = spec_from_target({0.0, 0.0, 16, true}, 10);
        CHECK(s.matrix.support_size() == 1);
        CHECK(s.repeat_p == 1.0);
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(spec_from_target({1.2, 0.5, 16, false}), SolverError);
        CHECK_THROWS_AS(spec_from_target({0.5, 0.5, 1, false}), SolverError);
    }
}

TEST_CASE("spec_from_trace") {
    SUBCASE("constant trace") {
        std::vector<TraceEntry> rows(20000, TraceEntry{1, 2});
        auto fit = spec_from_trace(Trace("const", rows), compressor_from_name("deflate"));
        CHECK(fit.spec.repeat_p == 1.0);
        CHECK_FALSE(fit.warnings.empty());
        CHECK(fit.spec.matrix.support_size() == 1);
    }
    SUBCASE("bursty trace recovers p") {
        auto original = generate(uniform_spec(16, 0.9, 200'000, 5));
        auto fit = spec_from_trace(original, CompressorHandle{});
        CHECK(std::abs(fit.spec.repeat_p - 0.9) < 0.05);
        CHECK(fit.spec.length == original.size());
        CHECK(total_variation(fit.spec.matrix, empirical_matrix(original)) == 0.0);
        CHECK(fit.spec.target_x.has_value());
    }
}

TEST_CASE("reference presets") {
    auto presets = reference_presets(16, 1000, {9, 0});
    REQUIRE(presets.size() == 4);
    CHECK(presets[0].name == "uniform");
    CHECK(presets[0].spec.repeat_p == 0.0);
    CHECK(presets[1].spec.repeat_p == 0.0);
    CHECK(normalized_nontemporal(presets[1].spec.matrix) == doctest::Approx(0.4).epsilon(1e-6));
    CHECK(presets[2].spec.repeat_p == doctest::Approx(0.7087856005056282).epsilon(1e-9));
    CHECK(presets[3].spec.repeat_p == doctest::Approx(0.8155).epsilon(1e-3));
    for (const auto& p : presets) CHECK(p.spec.length == 1000);
    CHECK_FALSE(presets[0].spec.seed == presets[1].spec.seed);
    CHECK_THROWS_AS(reference_presets(1), SolverError);
}
