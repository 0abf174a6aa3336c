#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dyncorr/io/csv.hpp"

namespace dyncorr::io {

struct ChartSeries {
    std::string name;
    std::vector<std::optional<double>> y;  ///< one entry per x position
    std::string color;
};

struct LineChart {
    std::string title;
    std::string x_label = "t";
    std::string y_label = "correlation";
    std::vector<double> x;
    std::vector<ChartSeries> series;
    std::optional<ChartSeries> truth;
    double y_min = -1.0;
    double y_max = 1.0;
    int width = 900;
    int height = 420;
};

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Maximal runs of defined points, as index ranges [first, last].
inline std::vector<std::pair<std::size_t, std::size_t>> defined_runs(
    const std::vector<std::optional<double>>& y) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t i = 0;
    while (i < y.size()) {
        while (i < y.size() && !y[i]) ++i;
        if (i == y.size()) break;
        const std::size_t start = i;
        while (i < y.size() && y[i]) ++i;
        runs.emplace_back(start, i - 1);
    }
    return runs;
}

/**
 * @brief Renders a line chart as standalone SVG.
 *
 * Each series becomes a <g class="series"> holding one <polyline> per run of
 * defined values, so missing entries show as gaps. The optional truth line
 * is drawn in black inside <g class="truth">.
 */
inline std::string render_svg(const LineChart& chart) {
    constexpr double left = 60.0;
    constexpr double right = 150.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;
    const double plot_w = chart.width - left - right;
    const double plot_h = chart.height - top - bottom;

    double x_lo = 0.0;
    double x_hi = 1.0;
    if (!chart.x.empty()) {
        x_lo = *std::min_element(chart.x.begin(), chart.x.end());
        x_hi = *std::max_element(chart.x.begin(), chart.x.end());
        if (x_hi == x_lo) x_hi = x_lo + 1.0;
    }
    const double y_span = chart.y_max - chart.y_min;
    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) {
        const double c = std::clamp(y, chart.y_min, chart.y_max);
        return top + (chart.y_max - c) / y_span * plot_h;
    };
    auto num = [](double v) {
        std::ostringstream s;
        s.imbue(std::locale::classic());
        s.precision(6);
        s << v;
        return s.str();
    };

    std::ostringstream svg;
    svg.imbue(std::locale::classic());
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\""
        << chart.height << "\" viewBox=\"0 0 " << chart.width << ' ' << chart.height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << chart.width << "\" height=\"" << chart.height
        << "\" fill=\"white\"/>\n";
    if (!chart.title.empty()) {
        svg << "<text x=\"" << num(left) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">"
            << xml_escape(chart.title) << "</text>\n";
    }

    svg << "<g class=\"axes\" stroke=\"#444\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\""
        << num(left + plot_w) << "\" y2=\"" << num(top + plot_h) << "\"/>\n";
    svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
        << "\" y2=\"" << num(top + plot_h) << "\"/>\n";
    svg << "</g>\n";

    svg << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double yv = chart.y_min + y_span * k / 4.0;
        svg << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(yv) + 4)
            << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
        const double xv = x_lo + (x_hi - x_lo) * k / 4.0;
        svg << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(top + plot_h + 16)
            << "\" text-anchor=\"middle\">" << num(std::round(xv)) << "</text>\n";
    }
    svg << "</g>\n";
    svg << "<text class=\"xlabel\" x=\"" << num(left + plot_w / 2) << "\" y=\"" << chart.height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(chart.x_label) << "</text>\n";
    svg << "<text class=\"ylabel\" x=\"16\" y=\"" << num(top + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
        << num(top + plot_h / 2) << ")\">" << xml_escape(chart.y_label) << "</text>\n";

    auto emit = [&](const ChartSeries& s, const char* cls) {
        svg << "<g class=\"" << cls << "\" data-name=\"" << xml_escape(s.name) << "\" fill=\"none\" stroke=\""
            << xml_escape(s.color) << "\" stroke-width=\"1.5\">\n";
        for (const auto& [first, last] : defined_runs(s.y)) {
            svg << "<polyline points=\"";
            for (std::size_t i = first; i <= last && i < chart.x.size(); ++i) {
                svg << (i == first ? "" : " ") << num(px(chart.x[i])) << ',' << num(py(*s.y[i]));
            }
            svg << "\"/>\n";
        }
        svg << "</g>\n";
    };
    if (chart.truth) emit(*chart.truth, "truth");
    for (const auto& s : chart.series) emit(s, "series");

    svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    double ly = top + 10;
    auto legend_entry = [&](const ChartSeries& s) {
        const double lx = left + plot_w + 15;
        svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 25)
            << "\" y2=\"" << num(ly) << "\" stroke=\"" << xml_escape(s.color) << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(lx + 32) << "\" y=\"" << num(ly + 4) << "\">" << xml_escape(s.name)
            << "</text>\n";
        ly += 20;
    };
    for (const auto& s : chart.series) legend_entry(s);
    if (chart.truth) legend_entry(*chart.truth);
    svg << "</g>\n";
    svg << "</svg>\n";
    return svg.str();
}

/// Default colors per method column name.
inline std::string method_color(const std::string& column) {
    if (column == "rho_sw") return "#1f4fd1";
    if (column == "rho_wvga") return "#c81fc8";
    if (column == "rho_dcc") return "#1a9a3a";
    return "#e07b00";
}

}  // namespace dyncorr::io
