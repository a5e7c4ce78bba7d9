#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tracecx/entropy.hpp"

namespace tracecx {

struct MapPoint {
    std::string label;
    double temporal = 0.0;
    double non_temporal = 0.0;
    double overall = 0.0;
};

/// Largest circle radius in pixels, drawn for overall complexity 1.
inline constexpr double map_max_radius = 28.0;

/// Complexity-map scatter over [0, 1] x [0, 1]: temporal on X, non-temporal
/// on Y, circle area proportional to overall complexity. Points are drawn
/// in the given order; coordinates outside the unit square are clamped to
/// the frame but labeled with their raw values.
void write_map_svg(const std::vector<MapPoint>& points, std::ostream& out);

/// "label,temporal,non_temporal,overall" with 17 significant digits.
void write_map_csv(const std::vector<MapPoint>& points, std::ostream& out);

/// Dense heatmap of the matrix, one square per (source, destination) cell.
/// With `log_scale` the color tracks log10 of the probability.
void write_matrix_svg(const TrafficMatrix& matrix, std::ostream& out, bool log_scale = false);

}  // namespace tracecx
