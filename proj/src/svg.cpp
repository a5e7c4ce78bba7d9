#include "tracecx/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>

#include "tracecx/error.hpp"

namespace tracecx {

namespace {

constexpr double plot_size = 480.0;
constexpr double margin = 70.0;
constexpr std::size_t max_heatmap_dim = 2048;

// Fixed-precision formatting so output does not depend on stream state.
std::string num(double v, int precision = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

// Sequential blue ramp, t in [0, 1].
std::string ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    auto mix = [t](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(0xf7, 0x08), mix(0xfb, 0x30),
                  mix(0xff, 0x6b));
    return buf;
}

const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_map_svg(const std::vector<MapPoint>& points, std::ostream& out) {
    const double size = plot_size + 2 * margin;
    auto px = [](double v) { return margin + std::clamp(v, 0.0, 1.0) * plot_size; };
    auto py = [](double v) { return margin + (1.0 - std::clamp(v, 0.0, 1.0)) * plot_size; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size, 0) << "\" height=\""
        << num(size, 0) << "\" viewBox=\"0 0 " << num(size, 0) << ' ' << num(size, 0)
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(size, 0) << "\" height=\"" << num(size, 0)
        << "\" fill=\"white\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        double v = i / 5.0;
        out << "<line x1=\"" << num(px(v)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(v))
            << "\" y2=\"" << num(py(1)) << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<line x1=\"" << num(px(0)) << "\" y1=\"" << num(py(v)) << "\" x2=\"" << num(px(1))
            << "\" y2=\"" << num(py(v)) << "\" stroke=\"#e0e0e0\"/>\n";
        out << "<text x=\"" << num(px(v)) << "\" y=\"" << num(py(0) + 18)
            << "\" text-anchor=\"middle\">" << num(v, 1) << "</text>\n";
        out << "<text x=\"" << num(px(0) - 8) << "\" y=\"" << num(py(v) + 4)
            << "\" text-anchor=\"end\">" << num(v, 1) << "</text>\n";
    }
    out << "<rect x=\"" << num(px(0)) << "\" y=\"" << num(py(1)) << "\" width=\""
        << num(plot_size) << "\" height=\"" << num(plot_size)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px(0.5)) << "\" y=\"" << num(size - 20)
        << "\" text-anchor=\"middle\">Temporal complexity</text>\n";
    out << "<text x=\"20\" y=\"" << num(py(0.5)) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << num(py(0.5)) << ")\">Non-temporal complexity</text>\n";

    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        // Area proportional to overall complexity.
        double r = map_max_radius * std::sqrt(std::max(0.0, p.overall));
        const char* color = palette[i % std::size(palette)];
        out << "<circle cx=\"" << num(px(p.temporal)) << "\" cy=\"" << num(py(p.non_temporal))
            << "\" r=\"" << num(r) << "\" fill=\"" << color
            << "\" fill-opacity=\"0.45\" stroke=\"" << color << "\"><title>"
            << xml_escape(p.label) << " T=" << num(p.temporal, 4) << " NT="
            << num(p.non_temporal, 4) << " Psi=" << num(p.overall, 4) << "</title></circle>\n";
        out << "<text x=\"" << num(px(p.temporal) + r + 3) << "\" y=\""
            << num(py(p.non_temporal) + 4) << "\">" << xml_escape(p.label) << "</text>\n";
    }
    out << "</svg>\n";
}

void write_map_csv(const std::vector<MapPoint>& points, std::ostream& out) {
    out << "label,temporal,non_temporal,overall\n";
    for (const auto& p : points) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", p.temporal, p.non_temporal, p.overall);
        out << csv_field(p.label) << ',' << buf << '\n';
    }
}

void write_matrix_svg(const TrafficMatrix& matrix, std::ostream& out, bool log_scale) {
    EndpointId max_id = 0;
    double max_p = 0.0, min_p = 1.0;
    for (const auto& c : matrix.cells()) {
        max_id = std::max({max_id, c.source, c.destination});
        max_p = std::max(max_p, c.probability);
        min_p = std::min(min_p, c.probability);
    }
    const std::size_t dim = static_cast<std::size_t>(max_id) + 1;
    if (dim > max_heatmap_dim)
        throw ConfigError("matrix has " + std::to_string(dim) +
                          " IDs per side; too large for an SVG heatmap");

    const double cell = std::max(1.0, std::floor(plot_size / static_cast<double>(dim)));
    const double side = cell * static_cast<double>(dim);
    const double size = side + 2 * margin;
    auto shade = [&](double p) {
        if (log_scale) {
            double lo = std::log10(min_p), hi = std::log10(max_p);
            return hi > lo ? (std::log10(p) - lo) / (hi - lo) : 1.0;
        }
        return max_p > 0 ? p / max_p : 0.0;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size, 0) << "\" height=\""
        << num(size, 0) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\"" << num(side)
        << "\" height=\"" << num(side) << "\" fill=\"" << ramp_color(0.0)
        << "\" stroke=\"black\"/>\n";
    for (const auto& c : matrix.cells()) {
        out << "<rect x=\"" << num(margin + c.destination * cell) << "\" y=\""
            << num(margin + c.source * cell) << "\" width=\"" << num(cell) << "\" height=\""
            << num(cell) << "\" fill=\"" << ramp_color(shade(c.probability)) << "\"><title>("
            << c.source << ',' << c.destination << ") " << num(c.probability, 6)
            << "</title></rect>\n";
    }
    out << "<text x=\"" << num(margin + side / 2) << "\" y=\"" << num(margin - 20)
        << "\" text-anchor=\"middle\">Destination</text>\n";
    out << "<text x=\"" << num(margin - 20) << "\" y=\"" << num(margin + side / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << num(margin - 20) << ' '
        << num(margin + side / 2) << ")\">Source</text>\n";
    out << "<text x=\"" << num(margin) << "\" y=\"" << num(margin + side + 24) << "\">max p = "
        << num(max_p, 6) << (log_scale ? " (log color scale)" : "") << "</text>\n";
    out << "</svg>\n";
}

}  // namespace tracecx
