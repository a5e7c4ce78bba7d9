#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tracecx/trace.hpp"

namespace tracecx {

struct MatrixCell {
    EndpointId source = 0;
    EndpointId destination = 0;
    double probability = 0.0;
};

/// Joint probability over (source, destination) pairs, stored sparsely and
/// sorted by (source, destination). Zero-probability cells are dropped.
class TrafficMatrix {
public:
    /// The one-pair matrix {(0, 0): 1} over n = 1.
    TrafficMatrix() : cells_{{0, 0, 1.0}}, n_(1) {}

    /// Probabilities must be >= 0 and sum to 1 within 1e-12; duplicate cells
    /// are rejected. `n` is |S u D| of the underlying ID universe and must
    /// cover every ID that appears in a cell.
    TrafficMatrix(std::vector<MatrixCell> cells, std::size_t n);

    /// Normalizes non-negative weights into probabilities.
    static TrafficMatrix from_weights(std::vector<MatrixCell> weighted, std::size_t n);

    const std::vector<MatrixCell>& cells() const noexcept { return cells_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t support_size() const noexcept { return cells_.size(); }

    /// 0 for pairs outside the support.
    double probability(EndpointId source, EndpointId destination) const;

private:
    std::vector<MatrixCell> cells_;
    std::size_t n_ = 0;
};

inline constexpr double matrix_sum_tolerance = 1e-12;

/// -sum p log2 p over the support, in bits.
double joint_entropy(const TrafficMatrix& matrix);

/// H(p, 1 - p) in bits with 0 log 0 = 0.
double binary_entropy(double p);

/// H(M) / (2 log2 n). Throws SolverError when n < 2.
double normalized_nontemporal(const TrafficMatrix& matrix);

/// Temporal ratio of the repeat chain: (H(p, 1-p) + (1-p) H_M) / H_M.
/// May exceed 1 for small p; returned as-is.
double model_temporal_ratio(double p, double joint_entropy_bits);

/// Maximizer of H(p, 1-p) + (1-p) H_M: the root of log2((1-p)/p) = H_M.
double repeat_probability_peak(double joint_entropy_bits);

/// Inverse of model_temporal_ratio on its decreasing branch [peak, 1].
double solve_repeat_probability(double x_target, double joint_entropy_bits);

/// Probability proportional to rank^-exponent over the n_ids^2 ordered
/// pairs, ranked row-major from (0, 0).
TrafficMatrix zipf_matrix(std::size_t n_ids, double exponent);

inline constexpr double max_zipf_exponent = 64.0;

/// Exponent in [0, 64] whose zipf_matrix has normalized_nontemporal equal to
/// y_target (within 1e-6).
double solve_zipf_exponent(std::size_t n_ids, double y_target);

/// Pair frequencies divided by the trace length.
TrafficMatrix empirical_matrix(const Trace& trace);

/// Single pair (0, 0) with probability 1 over an n-ID universe.
TrafficMatrix degenerate_matrix(std::size_t n_ids);

/// Sum over the union of supports of |a - b| / 2.
double total_variation(const TrafficMatrix& a, const TrafficMatrix& b);

/// "source,destination,probability" rows with a header line. Probabilities
/// are written with 17 significant digits so a reload is exact.
void write_matrix_triplets(const TrafficMatrix& matrix, std::ostream& out);
TrafficMatrix read_matrix_triplets(std::istream& in, std::size_t n = 0);

/// Dense n x n grid over IDs 0..max_id. The first row and column hold the
/// IDs (or raw labels when given).
void write_matrix_dense(const TrafficMatrix& matrix, std::ostream& out,
                        const std::vector<std::string>& labels = {});

}  // namespace tracecx
