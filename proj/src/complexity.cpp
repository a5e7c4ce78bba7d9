#include "tracecx/complexity.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "tracecx/error.hpp"

namespace tracecx {

namespace {

double mean(const std::vector<std::size_t>& sizes) {
    double sum = std::accumulate(sizes.begin(), sizes.end(), 0.0);
    return sum / static_cast<double>(sizes.size());
}

// Runs every job once, on up to `threads` workers. Results land at the
// job's index, so the outcome does not depend on scheduling.
std::vector<std::size_t> run_jobs(const std::vector<std::function<std::size_t()>>& jobs,
                                  unsigned threads) {
    std::vector<std::size_t> results(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs.size());
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                results[i] = jobs[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    pool.clear();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

std::string format_ratio(const char* label, double value) {
    std::ostringstream os;
    os << label << " ratio " << value << " exceeds 1 (compressor noise)";
    return os.str();
}

}  // namespace

RngSeed shuffle_seed(RngSeed base, std::size_t trial) {
    return base.with_stream(base.stream + 2 * trial);
}

RngSeed resample_seed(RngSeed base, std::size_t trial) {
    return base.with_stream(base.stream + 2 * trial + 1);
}

ComplexityPoint trace_complexity(const Trace& trace, const CompressorHandle& compressor,
                                 const ComplexityOptions& options) {
    if (options.trials == 0) throw ConfigError("trials must be >= 1");
    if (trace.size() == 0) throw EmptyTraceError("trace '" + trace.name() + "' has no entries");

    const ResampleMode mode = resolve_resample_mode(trace, options.resample);
    const std::size_t trials = options.trials;

    std::vector<std::function<std::size_t()>> jobs;
    jobs.reserve(2 * trials + 1);
    jobs.emplace_back([&] { return compressed_size(encode_canonical(trace), compressor); });
    for (std::size_t i = 0; i < trials; ++i) {
        jobs.emplace_back([&, i] {
            return compressed_size(encode_canonical(temporal_shuffle(trace, shuffle_seed(options.seed, i))),
                                   compressor);
        });
    }
    for (std::size_t i = 0; i < trials; ++i) {
        jobs.emplace_back([&, i] {
            return compressed_size(
                encode_canonical(uniform_resample(trace, resample_seed(options.seed, i), mode)),
                compressor);
        });
    }
    auto sizes = run_jobs(jobs, options.threads);

    ComplexityPoint point;
    point.original_size = sizes[0];
    point.shuffled_sizes.assign(sizes.begin() + 1, sizes.begin() + 1 + trials);
    point.uniform_sizes.assign(sizes.begin() + 1 + trials, sizes.end());
    point.shuffled_mean = mean(point.shuffled_sizes);
    point.uniform_mean = mean(point.uniform_sizes);

    const double original = static_cast<double>(point.original_size);
    point.temporal = original / point.shuffled_mean;
    point.non_temporal = point.shuffled_mean / point.uniform_mean;
    point.overall = original / point.uniform_mean;

    point.length = trace.size();
    point.n = trace.ids().n();
    point.column_count = trace.column_count();
    point.resample = mode;

    if (point.temporal > 1.0) point.warnings.push_back(format_ratio("temporal", point.temporal));
    if (point.non_temporal > 1.0)
        point.warnings.push_back(format_ratio("non-temporal", point.non_temporal));
    if (point.overall > 1.0) point.warnings.push_back(format_ratio("overall", point.overall));
    point.ratio_above_one = !point.warnings.empty();
    if (original > shuffle_slack * point.shuffled_mean)
        point.warnings.push_back("compressed trace is more than 5% larger than its shuffled mean");
    if (trace.size() < min_recommended_length)
        point.warnings.push_back("trace has " + std::to_string(trace.size()) +
                                 " entries; below " + std::to_string(min_recommended_length) +
                                 " compressor overhead dominates the ratios");
    return point;
}

SlicePoints complexity_of_slices(const Trace& trace, const CompressorHandle& compressor,
                                 const ComplexityOptions& options) {
    return {trace_complexity(slice_column(trace, Column::source), compressor, options),
            trace_complexity(slice_column(trace, Column::destination), compressor, options)};
}

}  // namespace tracecx
