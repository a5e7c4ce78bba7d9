#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tracecx/complexity.hpp"
#include "tracecx/compressor.hpp"
#include "tracecx/entropy.hpp"
#include "tracecx/random.hpp"
#include "tracecx/trace.hpp"

namespace tracecx {

/// Repeat-chain model: the first pair is drawn from `matrix`; afterwards the
/// previous pair is repeated with probability repeat_p, otherwise a fresh
/// pair is drawn from `matrix` (it may equal the previous one).
struct GeneratorSpec {
    TrafficMatrix matrix;
    double repeat_p = 0.0;
    std::size_t length = 1;
    RngSeed seed{};
    std::string name = "synthetic";

    // Provenance, recorded in the JSON form when known.
    std::optional<double> zipf_exponent;
    std::optional<double> target_x;
    std::optional<double> target_y;
};

/// Throws ConfigError unless repeat_p is in [0, 1] and length >= 1.
void validate(const GeneratorSpec& spec);

Trace generate(const GeneratorSpec& spec);

struct MapTarget {
    double x = 1.0;  // temporal, [0, 1]
    double y = 1.0;  // non-temporal, (0, 1]; 0 only with `degenerate`
    std::size_t n_ids = 16;
    /// Required for y = 0: selects the single-pair matrix.
    bool degenerate = false;
};

inline constexpr std::size_t default_n_ids = 16;
inline constexpr std::size_t default_preset_length = 10'000'000;

/// Zipf matrix solved for y, then p solved for x on the decreasing branch.
/// x = 1 maps to p = 0 (iid).
GeneratorSpec spec_from_target(const MapTarget& target, std::size_t length = default_preset_length,
                               RngSeed seed = {});

struct FitResult {
    GeneratorSpec spec;
    ComplexityPoint measured;  // the original trace's point
    std::vector<std::string> warnings;
};

/// Empirical matrix of `trace`, plus repeat_p solved from its measured
/// temporal ratio. Measured T outside [0, 1] is clamped for the solve and
/// reported as a warning; a zero-entropy matrix forces p = 1.
FitResult spec_from_trace(const Trace& trace, const CompressorHandle& compressor,
                          const ComplexityOptions& options = {});

struct ReferencePreset {
    std::string name;
    MapTarget target;
    GeneratorSpec spec;
};

/// Uniform (1, 1), Skewed (1, 0.4), Bursty (0.4, 1), Skewed & Bursty (0.4, 0.4).
std::array<ReferencePreset, 4> reference_presets(std::size_t n_ids = default_n_ids,
                                                 std::size_t length = default_preset_length,
                                                 RngSeed seed = {});

}  // namespace tracecx
