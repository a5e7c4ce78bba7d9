#pragma once

#include <string_view>

#include "tracecx/random.hpp"
#include "tracecx/trace.hpp"

namespace tracecx {

/// Uniform random permutation of the rows. Preserves the traffic matrix.
Trace temporal_shuffle(const Trace& trace, RngSeed seed);

/// Same-length trace whose source and destination are drawn independently
/// and uniformly from S u D. For single-column traces one ID is drawn per
/// entry and duplicated, matching slice_column's layout.
Trace uniform_resample(const Trace& trace, RngSeed seed);

/// Sources drawn uniformly from the source ID set, destinations from the
/// destination ID set, independently.
Trace uniform_resample_columnwise(const Trace& trace, RngSeed seed);

enum class ResampleMode { automatic, pair, columnwise };

/// Column sets whose symmetric difference exceeds this fraction of the
/// union are resampled column-wise under ResampleMode::automatic.
inline constexpr double columnwise_asymmetry_threshold = 0.10;

/// Resolves `automatic` against the trace's ID space.
ResampleMode resolve_resample_mode(const Trace& trace, ResampleMode mode);

Trace uniform_resample(const Trace& trace, RngSeed seed, ResampleMode mode);

std::string_view to_string(ResampleMode mode);
ResampleMode resample_mode_from_string(std::string_view name);

}  // namespace tracecx
