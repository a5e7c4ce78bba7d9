#pragma once

#include <cstdint>
#include <random>

namespace tracecx {

/// Identifies one reproducible random stream: a base seed plus a stream tag
/// (the trial index for randomization trials).
struct RngSeed {
    std::uint64_t seed = 0x5eed'c0de'2021ULL;
    std::uint64_t stream = 0;

    RngSeed with_stream(std::uint64_t s) const { return {seed, s}; }
    friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

inline constexpr std::uint64_t default_seed = RngSeed{}.seed;

/// Platform-stable generator. std::mt19937_64's output sequence is fixed by
/// the standard, but the std distributions are not, so bounded integers and
/// unit reals are derived here.
class Rng {
public:
    explicit Rng(RngSeed seed);

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace tracecx
