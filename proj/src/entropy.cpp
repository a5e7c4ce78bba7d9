#include "tracecx/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "tracecx/error.hpp"

namespace tracecx {

namespace {

bool cell_less(const MatrixCell& a, const MatrixCell& b) {
    return std::tie(a.source, a.destination) < std::tie(b.source, b.destination);
}

bool same_pair(const MatrixCell& a, const MatrixCell& b) {
    return a.source == b.source && a.destination == b.destination;
}

// Neumaier-compensated sum; the 1e-12 normalization check needs it for
// matrices with millions of cells.
template <typename Range, typename Get>
double compensated_sum(const Range& range, Get get) {
    double sum = 0.0, comp = 0.0;
    for (const auto& item : range) {
        double v = get(item);
        double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

std::size_t distinct_ids(const std::vector<MatrixCell>& cells) {
    std::vector<EndpointId> ids;
    ids.reserve(cells.size() * 2);
    for (const auto& c : cells) {
        ids.push_back(c.source);
        ids.push_back(c.destination);
    }
    std::sort(ids.begin(), ids.end());
    return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

// H of probabilities proportional to r^-a for r = 1..k, without building cells.
double zipf_entropy(std::size_t k, double a) {
    double z = 0.0, weighted_log = 0.0;
    for (std::size_t r = 1; r <= k; ++r) {
        double lr = std::log2(static_cast<double>(r));
        double w = std::exp2(-a * lr);
        z += w;
        weighted_log += w * lr;
    }
    // H = log2 Z + a * E[log2 r]
    return std::log2(z) + a * weighted_log / z;
}

}  // namespace

TrafficMatrix::TrafficMatrix(std::vector<MatrixCell> cells, std::size_t n) : n_(n) {
    if (n_ == 0) throw ConfigError("traffic matrix needs n >= 1");
    for (const auto& c : cells) {
        if (!(c.probability >= 0.0) || !std::isfinite(c.probability))
            throw ConfigError("traffic matrix probabilities must be finite and >= 0");
    }
    std::erase_if(cells, [](const MatrixCell& c) { return c.probability == 0.0; });
    if (cells.empty()) throw ConfigError("traffic matrix has no positive cells");
    std::sort(cells.begin(), cells.end(), cell_less);
    if (std::adjacent_find(cells.begin(), cells.end(), same_pair) != cells.end())
        throw ConfigError("traffic matrix has a duplicate cell");
    double total = compensated_sum(cells, [](const MatrixCell& c) { return c.probability; });
    if (std::abs(total - 1.0) > matrix_sum_tolerance) {
        std::ostringstream os;
        os << std::setprecision(17) << "traffic matrix probabilities sum to " << total;
        throw ConfigError(os.str());
    }
    if (distinct_ids(cells) > n_)
        throw ConfigError("traffic matrix uses more IDs than its declared n");
    cells_ = std::move(cells);
}

TrafficMatrix TrafficMatrix::from_weights(std::vector<MatrixCell> weighted, std::size_t n) {
    double total = compensated_sum(weighted, [](const MatrixCell& c) { return c.probability; });
    if (!(total > 0.0) || !std::isfinite(total))
        throw ConfigError("traffic matrix weights must have a positive finite sum");
    for (auto& c : weighted) c.probability /= total;
    return TrafficMatrix(std::move(weighted), n);
}

double TrafficMatrix::probability(EndpointId source, EndpointId destination) const {
    MatrixCell key{source, destination, 0.0};
    auto it = std::lower_bound(cells_.begin(), cells_.end(), key, cell_less);
    return it != cells_.end() && same_pair(*it, key) ? it->probability : 0.0;
}

double joint_entropy(const TrafficMatrix& matrix) {
    double h = compensated_sum(matrix.cells(), [](const MatrixCell& c) {
        return c.probability > 0.0 ? -c.probability * std::log2(c.probability) : 0.0;
    });
    return std::max(0.0, h);
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double normalized_nontemporal(const TrafficMatrix& matrix) {
    if (matrix.n() < 2)
        throw SolverError("non-temporal normalization 2 log n is zero for n = 1");
    return joint_entropy(matrix) / (2.0 * std::log2(static_cast<double>(matrix.n())));
}

double model_temporal_ratio(double p, double joint_entropy_bits) {
    if (!(p >= 0.0 && p <= 1.0)) throw SolverError("repeat probability must be in [0, 1]");
    if (!(joint_entropy_bits > 0.0))
        throw SolverError("temporal ratio is undefined for a zero-entropy traffic matrix");
    return (binary_entropy(p) + (1.0 - p) * joint_entropy_bits) / joint_entropy_bits;
}

double repeat_probability_peak(double joint_entropy_bits) {
    return 1.0 / (1.0 + std::exp2(joint_entropy_bits));
}

double solve_repeat_probability(double x_target, double joint_entropy_bits) {
    if (!(joint_entropy_bits > 0.0))
        throw SolverError("cannot solve for p: traffic matrix has zero entropy");
    if (!(x_target >= 0.0 && x_target <= 1.0))
        throw SolverError("temporal target x must be in [0, 1]");
    if (x_target == 0.0) return 1.0;

    const double h = joint_entropy_bits;
    auto f = [&](double p) { return binary_entropy(p) + (1.0 - p) * h - x_target * h; };
    // f(peak) > 0 because the ratio peaks at log2(1 + 2^H) / H > 1, and f(1) < 0.
    double lo = repeat_probability_peak(h);
    double hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double v = f(mid);
        if (v == 0.0) return mid;
        (v > 0.0 ? lo : hi) = mid;
    }
    double p = 0.5 * (lo + hi);
    if (std::abs(f(p)) >= 1e-10)
        throw SolverError("repeat probability bisection did not converge");
    return p;
}

TrafficMatrix zipf_matrix(std::size_t n_ids, double exponent) {
    if (n_ids == 0) throw ConfigError("zipf matrix needs at least one ID");
    if (!(exponent >= 0.0) || !std::isfinite(exponent))
        throw ConfigError("zipf exponent must be finite and >= 0");
    std::vector<MatrixCell> cells;
    cells.reserve(n_ids * n_ids);
    std::size_t rank = 1;
    for (std::size_t s = 0; s < n_ids; ++s) {
        for (std::size_t d = 0; d < n_ids; ++d, ++rank) {
            double w = std::exp2(-exponent * std::log2(static_cast<double>(rank)));
            cells.push_back({static_cast<EndpointId>(s), static_cast<EndpointId>(d), w});
        }
    }
    return TrafficMatrix::from_weights(std::move(cells), n_ids);
}

double solve_zipf_exponent(std::size_t n_ids, double y_target) {
    if (n_ids < 2) throw SolverError("zipf exponent solve needs n >= 2");
    if (y_target == 0.0)
        throw SolverError(
            "y = 0 is unreachable by a finite Zipf exponent; use a degenerate single-pair "
            "matrix instead");
    if (!(y_target > 0.0 && y_target <= 1.0))
        throw SolverError("non-temporal target y must be in (0, 1]");
    if (y_target == 1.0) return 0.0;

    const std::size_t cells = n_ids * n_ids;
    const double norm = 2.0 * std::log2(static_cast<double>(n_ids));
    auto y_of = [&](double a) { return zipf_entropy(cells, a) / norm; };
    if (y_target < y_of(max_zipf_exponent)) {
        std::ostringstream os;
        os << "y = " << y_target << " is below the reach of Zipf exponents <= "
           << max_zipf_exponent << " for n = " << n_ids
           << "; use a degenerate single-pair matrix instead";
        throw SolverError(os.str());
    }
    double lo = 0.0, hi = max_zipf_exponent;
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        double mid = 0.5 * (lo + hi);
        (y_of(mid) > y_target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TrafficMatrix empirical_matrix(const Trace& trace) {
    if (trace.size() == 0) throw EmptyTraceError("cannot build a matrix from an empty trace");
    std::unordered_map<std::uint64_t, std::size_t> counts;
    for (const auto& e : trace.entries())
        ++counts[(static_cast<std::uint64_t>(e.source) << 32) | e.destination];
    std::vector<MatrixCell> cells;
    cells.reserve(counts.size());
    const double t = static_cast<double>(trace.size());
    for (const auto& [key, count] : counts) {
        cells.push_back({static_cast<EndpointId>(key >> 32),
                         static_cast<EndpointId>(key & 0xffffffffu),
                         static_cast<double>(count) / t});
    }
    return TrafficMatrix(std::move(cells), trace.ids().n());
}

TrafficMatrix degenerate_matrix(std::size_t n_ids) {
    return TrafficMatrix({{0, 0, 1.0}}, std::max<std::size_t>(n_ids, 1));
}

double total_variation(const TrafficMatrix& a, const TrafficMatrix& b) {
    const auto& x = a.cells();
    const auto& y = b.cells();
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && cell_less(x[i], y[j]))) {
            sum += x[i++].probability;
        } else if (i == x.size() || cell_less(y[j], x[i])) {
            sum += y[j++].probability;
        } else {
            sum += std::abs(x[i++].probability - y[j++].probability);
        }
    }
    return 0.5 * sum;
}

void write_matrix_triplets(const TrafficMatrix& matrix, std::ostream& out) {
    out << "source,destination,probability\n";
    out << std::setprecision(17);
    for (const auto& c : matrix.cells())
        out << c.source << ',' << c.destination << ',' << c.probability << '\n';
}

TrafficMatrix read_matrix_triplets(std::istream& in, std::size_t n) {
    std::vector<MatrixCell> cells;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.find_first_of("0123456789") != 0) continue;  // header
        std::istringstream row(line);
        MatrixCell c;
        char sep1 = 0, sep2 = 0;
        if (!(row >> c.source >> sep1 >> c.destination >> sep2 >> c.probability) ||
            sep1 != ',' || sep2 != ',')
            throw ParseError("expected source,destination,probability", line_no);
        cells.push_back(c);
    }
    if (cells.empty()) throw ParseError("matrix file has no cells");
    const std::size_t ids = distinct_ids(cells);
    if (n == 0) n = ids;
    double total = compensated_sum(cells, [](const MatrixCell& c) { return c.probability; });
    if (std::abs(total - 1.0) > matrix_sum_tolerance)
        return TrafficMatrix::from_weights(std::move(cells), n);
    return TrafficMatrix(std::move(cells), n);
}

void write_matrix_dense(const TrafficMatrix& matrix, std::ostream& out,
                        const std::vector<std::string>& labels) {
    EndpointId max_id = 0;
    for (const auto& c : matrix.cells()) max_id = std::max({max_id, c.source, c.destination});
    const std::size_t dim = static_cast<std::size_t>(max_id) + 1;
    if (dim > 8192)
        throw ConfigError("matrix has " + std::to_string(dim) +
                          " IDs per side; write it as triplets instead");
    std::vector<double> grid(dim * dim, 0.0);
    for (const auto& c : matrix.cells()) grid[c.source * dim + c.destination] = c.probability;

    auto label = [&](std::size_t id) {
        return id < labels.size() ? labels[id] : std::to_string(id);
    };
    out << std::setprecision(17) << "source\\destination";
    for (std::size_t d = 0; d < dim; ++d) out << ',' << label(d);
    out << '\n';
    for (std::size_t s = 0; s < dim; ++s) {
        out << label(s);
        for (std::size_t d = 0; d < dim; ++d) out << ',' << grid[s * dim + d];
        out << '\n';
    }
}

}  // namespace tracecx
