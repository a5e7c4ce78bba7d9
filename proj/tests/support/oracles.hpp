#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's entropy or complexity code.

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "tracecx/trace.hpp"

namespace tracecx::oracle {

inline double entropy_bits(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0) h -= p * std::log2(p);
    return h;
}

/// Zipf weights k^-a over ranks 1..k, normalized with std::pow.
inline std::vector<double> zipf_probs(std::size_t k, double a) {
    std::vector<double> w(k);
    double z = 0.0;
    for (std::size_t r = 1; r <= k; ++r) z += (w[r - 1] = std::pow(static_cast<double>(r), -a));
    for (auto& v : w) v /= z;
    return w;
}

/// Entropy rate of the repeat chain: sum_z M(z) H(next | current = z), where
/// next = z with probability p + (1-p) M(z) and z' != z with (1-p) M(z').
inline double repeat_chain_entropy_rate(const std::vector<double>& m, double p) {
    double rate = 0.0;
    double fresh_terms = 0.0;  // sum over all z' of -(1-p)M(z') log2((1-p)M(z'))
    for (double v : m) {
        double q = (1 - p) * v;
        if (q > 0) fresh_terms -= q * std::log2(q);
    }
    for (double v : m) {
        if (v == 0) continue;
        double q = (1 - p) * v;
        double stay = p + q;
        double h = fresh_terms;
        if (q > 0) h += q * std::log2(q);
        if (stay > 0) h -= stay * std::log2(stay);
        rate += v * h;
    }
    return rate;
}

inline double binary_entropy(double p) {
    if (p <= 0 || p >= 1) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

/// Pair histogram by brute-force counting.
inline std::map<std::pair<EndpointId, EndpointId>, std::size_t> pair_counts(const Trace& t) {
    std::map<std::pair<EndpointId, EndpointId>, std::size_t> counts;
    for (const auto& e : t.entries()) ++counts[{e.source, e.destination}];
    return counts;
}

/// Pearson chi-square statistic of observed counts against equal expectation.
inline double chi_square_uniform(const std::vector<std::size_t>& observed) {
    double total = 0;
    for (auto c : observed) total += static_cast<double>(c);
    double expected = total / static_cast<double>(observed.size());
    double stat = 0;
    for (auto c : observed) {
        double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

}  // namespace tracecx::oracle
