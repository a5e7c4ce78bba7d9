#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tracecx/compressor.hpp"
#include "tracecx/random.hpp"
#include "tracecx/trace.hpp"
#include "tracecx/transforms.hpp"

namespace tracecx {

/// Traces shorter than this are analyzed but flagged: fixed compressor
/// overhead dominates their sizes.
inline constexpr std::size_t min_recommended_length = 10'000;

/// Allowed excess of C(trace) over the mean shuffled size before a warning.
inline constexpr double shuffle_slack = 1.05;

struct ComplexityOptions {
    std::size_t trials = 3;
    RngSeed seed{};
    ResampleMode resample = ResampleMode::automatic;
    /// Worker threads for the 2 * trials + 1 compression jobs. 0 picks
    /// std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// One trace's position on the complexity map plus everything needed to
/// audit it.
struct ComplexityPoint {
    double temporal = 0.0;      // C(trace) / mean C(shuffled)
    double non_temporal = 0.0;  // mean C(shuffled) / mean C(uniform)
    double overall = 0.0;       // C(trace) / mean C(uniform)

    std::size_t original_size = 0;
    double shuffled_mean = 0.0;
    double uniform_mean = 0.0;
    std::vector<std::size_t> shuffled_sizes;
    std::vector<std::size_t> uniform_sizes;

    std::size_t length = 0;
    std::size_t n = 0;
    int column_count = 2;
    ResampleMode resample = ResampleMode::pair;  // resolved mode actually used

    /// Set when any ratio exceeds 1; the raw value is kept.
    bool ratio_above_one = false;
    std::vector<std::string> warnings;
};

/// Stream tags used for trial i; recorded so a report can be replayed.
RngSeed shuffle_seed(RngSeed base, std::size_t trial);
RngSeed resample_seed(RngSeed base, std::size_t trial);

ComplexityPoint trace_complexity(const Trace& trace, const CompressorHandle& compressor,
                                 const ComplexityOptions& options = {});

struct SlicePoints {
    ComplexityPoint source;
    ComplexityPoint destination;
};

/// trace_complexity on each column slice (column_count = 1).
SlicePoints complexity_of_slices(const Trace& trace, const CompressorHandle& compressor,
                                 const ComplexityOptions& options = {});

}  // namespace tracecx
