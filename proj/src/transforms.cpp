#include "tracecx/transforms.hpp"

#include <string>
#include <utility>
#include <vector>

#include "tracecx/error.hpp"

namespace tracecx {

Trace temporal_shuffle(const Trace& trace, RngSeed seed) {
    std::vector<TraceEntry> rows(trace.entries().begin(), trace.entries().end());
    Rng rng(seed);
    // Fisher-Yates
    for (std::size_t i = rows.size(); i > 1; --i) {
        std::size_t j = rng.below(i);
        std::swap(rows[i - 1], rows[j]);
    }
    return trace.with_entries(trace.name() + "#shuffled", std::move(rows));
}

Trace uniform_resample(const Trace& trace, RngSeed seed) {
    const auto& pool = trace.ids().union_ids();
    if (pool.empty()) throw ConfigError("cannot resample a trace with an empty id space");
    Rng rng(seed);
    std::vector<TraceEntry> rows(trace.size());
    if (trace.column_count() == 1) {
        for (auto& e : rows) {
            EndpointId c = pool[rng.below(pool.size())];
            e = {c, c};
        }
    } else {
        for (auto& e : rows) {
            e.source = pool[rng.below(pool.size())];
            e.destination = pool[rng.below(pool.size())];
        }
    }
    // Pair mode may place a destination-only ID in the source column, so the
    // result carries the full union on both sides.
    IdSpace space = IdSpace::from_sets(pool, pool);
    Trace out(trace.name() + "#uniform", std::move(rows), std::move(space),
              trace.column_count());
    return out;
}

Trace uniform_resample_columnwise(const Trace& trace, RngSeed seed) {
    const auto& sources = trace.ids().source_ids();
    const auto& dests = trace.ids().dest_ids();
    if (sources.empty() || dests.empty())
        throw ConfigError("cannot resample a trace with an empty column id set");
    if (trace.column_count() == 1) return uniform_resample(trace, seed);
    Rng rng(seed);
    std::vector<TraceEntry> rows(trace.size());
    for (auto& e : rows) {
        e.source = sources[rng.below(sources.size())];
        e.destination = dests[rng.below(dests.size())];
    }
    return trace.with_entries(trace.name() + "#uniform-columnwise", std::move(rows));
}

ResampleMode resolve_resample_mode(const Trace& trace, ResampleMode mode) {
    if (mode != ResampleMode::automatic) return mode;
    return trace.ids().asymmetry() > columnwise_asymmetry_threshold ? ResampleMode::columnwise
                                                                     : ResampleMode::pair;
}

Trace uniform_resample(const Trace& trace, RngSeed seed, ResampleMode mode) {
    switch (resolve_resample_mode(trace, mode)) {
        case ResampleMode::columnwise:
            return uniform_resample_columnwise(trace, seed);
        default:
            return uniform_resample(trace, seed);
    }
}

std::string_view to_string(ResampleMode mode) {
    switch (mode) {
        case ResampleMode::automatic: return "auto";
        case ResampleMode::pair: return "pair";
        case ResampleMode::columnwise: return "columnwise";
    }
    return "auto";
}

ResampleMode resample_mode_from_string(std::string_view name) {
    if (name == "auto") return ResampleMode::automatic;
    if (name == "pair") return ResampleMode::pair;
    if (name == "columnwise") return ResampleMode::columnwise;
    throw ConfigError("unknown resample mode '" + std::string(name) +
                      "' (expected auto, pair or columnwise)");
}

}  // namespace tracecx
