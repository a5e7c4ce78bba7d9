#include <boost/math/distributions/chi_squared.hpp>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "tracecx/generator.hpp"
#include "tracecx/transforms.hpp"

using namespace tracecx;

namespace {

Trace random_trace(std::size_t len, std::size_t ids, std::uint64_t seed) {
    Rng rng({seed, 99});
    std::vector<TraceEntry> e(len);
    for (auto& x : e)
        x = {static_cast<EndpointId>(rng.below(ids)), static_cast<EndpointId>(rng.below(ids))};
    return Trace("random", std::move(e));
}

double chi_square_critical(std::size_t cells, double alpha) {
    boost::math::chi_squared dist(static_cast<double>(cells - 1));
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

}  // namespace

TEST_CASE("temporal_shuffle permutes rows") {
    auto t = random_trace(5000, 12, 1);
    auto s = temporal_shuffle(t, {3, 0});
    CHECK(s.size() == t.size());
    CHECK(oracle::pair_counts(s) == oracle::pair_counts(t));
    bool moved = false;
    for (std::size_t i = 0; i < t.size(); ++i) moved = moved || !(s.entries()[i] == t.entries()[i]);
    CHECK(moved);
}

TEST_CASE("temporal_shuffle edge cases") {
    Trace one("one", {{4, 2}});
    CHECK(temporal_shuffle(one, {1, 0}).entries()[0] == TraceEntry{4, 2});

    auto t = random_trace(1000, 5, 2);
    auto a = temporal_shuffle(t, {11, 3});
    auto b = temporal_shuffle(t, {11, 3});
    auto c = temporal_shuffle(t, {11, 4});
    CHECK(std::equal(a.entries().begin(), a.entries().end(), b.entries().begin()));
    CHECK_FALSE(std::equal(a.entries().begin(), a.entries().end(), c.entries().begin()));
}

TEST_CASE("temporal_shuffle is unbiased on a small permutation") {
    // All 6 orderings of 3 distinct rows should appear about equally often.
    Trace t("abc", {{0, 0}, {1, 1}, {2, 2}});
    std::map<std::vector<EndpointId>, std::size_t> seen;
    const std::size_t draws = 60000;
    for (std::size_t i = 0; i < draws; ++i) {
        auto s = temporal_shuffle(t, {5, i});
        seen[{s.entries()[0].source, s.entries()[1].source, s.entries()[2].source}]++;
    }
    REQUIRE(seen.size() == 6);
    std::vector<std::size_t> counts;
    for (auto& [k, v] : seen) counts.push_back(v);
    CHECK(oracle::chi_square_uniform(counts) < chi_square_critical(6, 0.001));
}

TEST_CASE("uniform_resample pair mode frequencies (n = 2, t = 1e6)") {
    std::vector<TraceEntry> rows(1'000'000, TraceEntry{0, 1});
    rows[1] = {1, 0};
    Trace big("two", std::move(rows));
    auto u = uniform_resample(big, {7, 0});
    CHECK(u.size() == big.size());
    auto counts = oracle::pair_counts(u);
    REQUIRE(counts.size() == 4);
    for (auto& [pair, c] : counts) CHECK(std::abs(static_cast<double>(c) / 1e6 - 0.25) < 0.002);
}

TEST_CASE("uniform_resample n = 1 and determinism") {
    Trace t("const", {{3, 3}, {3, 3}, {3, 3}});
    auto u = uniform_resample(t, {1, 0});
    for (const auto& e : u.entries()) CHECK(e == TraceEntry{3, 3});

    auto r = random_trace(2000, 9, 4);
    auto a = uniform_resample(r, {8, 1});
    auto b = uniform_resample(r, {8, 1});
    CHECK(std::equal(a.entries().begin(), a.entries().end(), b.entries().begin()));
}

TEST_CASE("uniform_resample draws from the union, keeping encoding width") {
    // Sources {0}, destinations {10}: union {0, 10}.
    Trace t("asym", {{0, 10}, {0, 10}});
    auto u = uniform_resample(t, {2, 0}, ResampleMode::pair);
    CHECK(u.ids().union_ids() == std::vector<EndpointId>{0, 10});
    CHECK(encoding_width(u) == 2);
}

TEST_CASE("uniform_resample_columnwise") {
    std::vector<TraceEntry> rows(1'000'000, TraceEntry{1, 2});
    rows[0] = {1, 3};
    Trace t("cw", std::move(rows));
    auto u = uniform_resample_columnwise(t, {9, 0});
    std::size_t threes = 0;
    for (const auto& e : u.entries()) {
        CHECK_MESSAGE(e.source == 1, "source outside its column set");
        threes += e.destination == 3;
    }
    CHECK(std::abs(static_cast<double>(threes) / 1e6 - 0.5) < 0.002);

    auto a = uniform_resample_columnwise(t, {9, 0});
    CHECK(std::equal(a.entries().begin(), a.entries().end(), u.entries().begin()));
}

TEST_CASE("columnwise equals pair mode when column sets coincide") {
    auto r = random_trace(200000, 6, 5);
    REQUIRE(r.ids().source_ids() == r.ids().union_ids());
    REQUIRE(r.ids().dest_ids() == r.ids().union_ids());
    auto pair = uniform_resample(r, {3, 0}, ResampleMode::pair);
    auto col = uniform_resample(r, {3, 0}, ResampleMode::columnwise);
    CHECK(std::equal(pair.entries().begin(), pair.entries().end(), col.entries().begin()));
}

TEST_CASE("automatic resample mode follows column asymmetry") {
    Trace sym("sym", {{0, 1}, {1, 2}, {2, 0}});
    Trace asym("asym", {{0, 5}, {1, 6}, {2, 7}});
    CHECK(resolve_resample_mode(sym, ResampleMode::automatic) == ResampleMode::pair);
    CHECK(resolve_resample_mode(asym, ResampleMode::automatic) == ResampleMode::columnwise);
    CHECK(resolve_resample_mode(asym, ResampleMode::pair) == ResampleMode::pair);
    CHECK(resample_mode_from_string(to_string(ResampleMode::columnwise)) == ResampleMode::columnwise);
    CHECK_THROWS(resample_mode_from_string("sideways"));
}

TEST_CASE("single-column traces resample to duplicated columns") {
    auto r = random_trace(1000, 8, 6);
    auto slice = slice_column(r, Column::source);
    auto u = uniform_resample(slice, {1, 1});
    CHECK(u.column_count() == 1);
    for (const auto& e : u.entries()) CHECK(e.source == e.destination);
}

TEST_CASE("property: shuffle preserves the traffic matrix; lengths match") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng({seed, 1});
        auto t = random_trace(1 + rng.below(3000), 1 + rng.below(40), seed);
        auto s = temporal_shuffle(t, {seed, 2});
        auto u = uniform_resample(t, {seed, 3}, ResampleMode::automatic);
        CHECK(s.size() == t.size());
        CHECK(u.size() == t.size());
        CHECK(oracle::pair_counts(s) == oracle::pair_counts(t));
    }
}

TEST_CASE("uniform_resample marginals pass chi-square at 0.001") {
    auto t = random_trace(1000, 16, 8);
    std::vector<TraceEntry> rows(t.entries().begin(), t.entries().end());
    rows.resize(1'000'000, rows.front());
    Trace big("big", std::move(rows));
    auto u = uniform_resample(big, {77, 0});
    std::vector<std::size_t> src(16, 0), dst(16, 0);
    for (const auto& e : u.entries()) {
        src[e.source]++;
        dst[e.destination]++;
    }
    const double crit = chi_square_critical(16, 0.001);
    CHECK(oracle::chi_square_uniform(src) < crit);
    CHECK(oracle::chi_square_uniform(dst) < crit);
}
