#include "tracecx/generator.hpp"

#include <algorithm>
#include <sstream>

#include "tracecx/error.hpp"

namespace tracecx {

void validate(const GeneratorSpec& spec) {
    if (!(spec.repeat_p >= 0.0 && spec.repeat_p <= 1.0))
        throw ConfigError("repeat probability must be in [0, 1]");
    if (spec.length == 0) throw ConfigError("generator length must be >= 1");
}

Trace generate(const GeneratorSpec& spec) {
    validate(spec);
    const auto& cells = spec.matrix.cells();
    if (cells.empty()) throw ConfigError("generator matrix is empty");

    std::vector<double> cdf(cells.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        acc += cells[i].probability;
        cdf[i] = acc;
    }
    auto draw = [&](Rng& rng) -> const MatrixCell& {
        double u = rng.unit() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t idx = std::min<std::size_t>(it - cdf.begin(), cells.size() - 1);
        return cells[idx];
    };

    Rng rng(spec.seed);
    std::vector<TraceEntry> entries(spec.length);
    const MatrixCell* current = &draw(rng);
    entries[0] = {current->source, current->destination};
    for (std::size_t i = 1; i < spec.length; ++i) {
        if (rng.unit() >= spec.repeat_p) current = &draw(rng);
        entries[i] = {current->source, current->destination};
    }
    return Trace(spec.name, std::move(entries));
}

GeneratorSpec spec_from_target(const MapTarget& target, std::size_t length, RngSeed seed) {
    if (!(target.x >= 0.0 && target.x <= 1.0))
        throw SolverError("temporal target x must be in [0, 1]");
    if (target.n_ids < 2) throw SolverError("map targets need n >= 2");

    GeneratorSpec spec;
    spec.length = length;
    spec.seed = seed;
    spec.target_x = target.x;
    spec.target_y = target.y;

    if (target.y == 0.0) {
        if (!target.degenerate)
            throw SolverError(
                "y = 0 needs a single-pair matrix, where the temporal ratio is undefined; "
                "pass the degenerate flag to generate a constant trace");
        spec.matrix = degenerate_matrix(target.n_ids);
        spec.repeat_p = 1.0;
        return spec;
    }

    const double exponent = solve_zipf_exponent(target.n_ids, target.y);
    spec.matrix = zipf_matrix(target.n_ids, exponent);
    spec.zipf_exponent = exponent;
    // x = 1 is met by p = 0 as well as by the decreasing-branch root; only the
    // iid chain actually has entropy-rate ratio 1.
    spec.repeat_p =
        target.x == 1.0 ? 0.0 : solve_repeat_probability(target.x, joint_entropy(spec.matrix));
    validate(spec);
    return spec;
}

FitResult spec_from_trace(const Trace& trace, const CompressorHandle& compressor,
                          const ComplexityOptions& options) {
    FitResult fit;
    fit.spec.matrix = empirical_matrix(trace);
    fit.spec.length = trace.size();
    fit.spec.seed = options.seed;
    fit.spec.name = trace.name() + "#fit";
    fit.measured = trace_complexity(trace, compressor, options);

    const double h = joint_entropy(fit.spec.matrix);
    if (h == 0.0) {
        fit.spec.repeat_p = 1.0;
        fit.warnings.push_back("trace has a single distinct pair; repeat probability forced to 1");
        return fit;
    }
    double x = fit.measured.temporal;
    if (x > 1.0 || x < 0.0) {
        std::ostringstream os;
        os << "measured temporal ratio " << x << " clamped to [0, 1] for the repeat solve";
        fit.warnings.push_back(os.str());
        x = std::clamp(x, 0.0, 1.0);
    }
    fit.spec.target_x = x;
    fit.spec.repeat_p = solve_repeat_probability(x, h);
    return fit;
}

std::array<ReferencePreset, 4> reference_presets(std::size_t n_ids, std::size_t length,
                                                 RngSeed seed) {
    if (n_ids < 2) throw SolverError("reference presets need n >= 2");
    const std::array<std::pair<const char*, std::pair<double, double>>, 4> layout{{
        {"uniform", {1.0, 1.0}},
        {"skewed", {1.0, 0.4}},
        {"bursty", {0.4, 1.0}},
        {"skewed-bursty", {0.4, 0.4}},
    }};
    std::array<ReferencePreset, 4> presets;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        MapTarget target{layout[i].second.first, layout[i].second.second, n_ids, false};
        auto spec = spec_from_target(target, length, seed.with_stream(seed.stream + i));
        spec.name = layout[i].first;
        presets[i] = {layout[i].first, target, std::move(spec)};
    }
    return presets;
}

}  // namespace tracecx
