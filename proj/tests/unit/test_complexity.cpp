#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "tracecx/complexity.hpp"
#include "tracecx/error.hpp"
#include "tracecx/random.hpp"

using namespace tracecx;

namespace {

Trace iid_trace(std::size_t len, std::size_t ids, std::uint64_t seed) {
    Rng rng({seed, 5});
    std::vector<TraceEntry> e(len);
    for (auto& x : e)
        x = {static_cast<EndpointId>(rng.below(ids)), static_cast<EndpointId>(rng.below(ids))};
    return Trace("iid", std::move(e));
}

const CompressorHandle lzma{};

}  // namespace

TEST_CASE("iid uniform trace sits at (1, 1)") {
    auto p = trace_complexity(iid_trace(200'000, 16, 1), lzma);
    CHECK(std::abs(p.temporal - 1.0) < 0.03);
    CHECK(std::abs(p.non_temporal - 1.0) < 0.03);
    CHECK(p.shuffled_sizes.size() == 3);
    CHECK(p.uniform_sizes.size() == 3);
    CHECK(p.length == 200'000);
    CHECK(p.n == 16);
    CHECK(p.resample == ResampleMode::pair);
}

TEST_CASE("constant trace has near-zero overall complexity") {
    // Automatic mode would pick column-wise U here (disjoint column sets),
    // which maps a one-pair trace onto itself.
    std::vector<TraceEntry> rows(100'000, TraceEntry{0, 1});
    ComplexityOptions opts;
    opts.resample = ResampleMode::pair;
    auto p = trace_complexity(Trace("const", std::move(rows)), lzma, opts);
    CHECK(p.overall < 0.05);
    CHECK(std::abs(p.temporal - 1.0) < 0.03);
}

TEST_CASE("sorted trace has lower temporal ratio than its shuffle") {
    auto t = iid_trace(100'000, 16, 2);
    std::vector<TraceEntry> rows(t.entries().begin(), t.entries().end());
    std::sort(rows.begin(), rows.end());
    auto sorted = trace_complexity(Trace("sorted", std::move(rows)), lzma);
    auto shuffled = trace_complexity(temporal_shuffle(t, {4, 0}), lzma);
    CHECK(sorted.temporal < 0.2);
    CHECK(shuffled.temporal > 0.9);
}

TEST_CASE("overall equals temporal times non-temporal") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto p = trace_complexity(iid_trace(5000 + 3000 * seed, 3 + 7 * seed, seed),
                                  compressor_from_name("deflate"), {2, {seed, 0}});
        CHECK(std::abs(p.overall - p.temporal * p.non_temporal) <= 1e-9 * p.overall);
        CHECK(p.overall == doctest::Approx(static_cast<double>(p.original_size) / p.uniform_mean));
    }
}

TEST_CASE("trials agree closely on long traces") {
    ComplexityOptions opts;
    opts.trials = 5;
    auto p = trace_complexity(iid_trace(100'000, 32, 3), lzma, opts);
    auto spread = [](const std::vector<std::size_t>& v) {
        double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double var = 0;
        for (auto s : v) var += (static_cast<double>(s) - mean) * (static_cast<double>(s) - mean);
        return std::sqrt(var / static_cast<double>(v.size() - 1)) / mean;
    };
    CHECK(spread(p.shuffled_sizes) < 0.01);
    CHECK(spread(p.uniform_sizes) < 0.01);
}

TEST_CASE("results do not depend on the thread count") {
    auto t = iid_trace(20'000, 12, 6);
    ComplexityOptions one;
    one.threads = 1;
    ComplexityOptions four;
    four.threads = 4;
    auto a = trace_complexity(t, lzma, one);
    auto b = trace_complexity(t, lzma, four);
    CHECK(a.shuffled_sizes == b.shuffled_sizes);
    CHECK(a.uniform_sizes == b.uniform_sizes);
    CHECK(a.overall == b.overall);
}

TEST_CASE("seed streams are distinct per trial") {
    RngSeed base{1, 0};
    CHECK_FALSE(shuffle_seed(base, 0) == resample_seed(base, 0));
    CHECK_FALSE(shuffle_seed(base, 1) == shuffle_seed(base, 0));
    CHECK_FALSE(resample_seed(base, 0) == shuffle_seed(base, 1));
}

TEST_CASE("warnings") {
    SUBCASE("short trace") {
        auto p = trace_complexity(iid_trace(500, 4, 1), lzma);
        CHECK_FALSE(p.warnings.empty());
    }
    SUBCASE("zero trials") {
        ComplexityOptions opts;
        opts.trials = 0;
        CHECK_THROWS_AS(trace_complexity(iid_trace(100, 4, 1), lzma, opts), ConfigError);
    }
}

TEST_CASE("slices of a symmetric iid trace agree") {
    auto s = complexity_of_slices(iid_trace(100'000, 16, 7), lzma);
    CHECK(s.source.column_count == 1);
    CHECK(std::abs(s.source.temporal - s.destination.temporal) < 0.05);
    CHECK(std::abs(s.source.non_temporal - s.destination.non_temporal) < 0.05);
    CHECK(std::abs(s.source.non_temporal - 1.0) < 0.05);
}

TEST_CASE("constant source column") {
    Rng rng({8, 0});
    std::vector<TraceEntry> rows(50'000);
    for (auto& r : rows) r = {0, static_cast<EndpointId>(1 + rng.below(15))};
    auto s = complexity_of_slices(Trace("fan-out", std::move(rows)), lzma);
    CHECK(s.source.n == 16);
    CHECK(std::abs(s.source.temporal - 1.0) < 0.05);
    CHECK(s.source.non_temporal < 0.05);
    CHECK(s.destination.non_temporal > 0.9);
}
