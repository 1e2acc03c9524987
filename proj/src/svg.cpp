#include "marketsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "marketsim/csv.hpp"

namespace marketsim {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 130.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;
constexpr int kAxisTicks = 5;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2"};

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded_range(double lo, double hi) {
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

}  // namespace

void emit_plot(const std::vector<PlotSeries>& series, const std::string& title,
               const std::string& path, std::optional<double> vertical_marker) {
    if (series.empty()) throw std::invalid_argument("emit_plot: no series");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const PlotSeries& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty()) {
            throw std::invalid_argument("emit_plot: series " + s.label +
                                        " is empty or ragged");
        }
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    const Range xr = padded_range(xmin, xmax);
    const Range yr = padded_range(ymin, ymax);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double v) {
        return kMarginLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };
    auto sy = [&](double v) {
        return kMarginTop + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
    };
    auto num = [](double v) { return format_double(v); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
        << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << " "
        << num(kHeight) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // Axes.
    svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(kMarginTop)
        << "\" x2=\"" << num(kMarginLeft) << "\" y2=\"" << num(kMarginTop + plot_h)
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(kMarginTop + plot_h)
        << "\" x2=\"" << num(kMarginLeft + plot_w) << "\" y2=\""
        << num(kMarginTop + plot_h) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= kAxisTicks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / kAxisTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / kAxisTicks;
        svg << "<line x1=\"" << num(sx(fx)) << "\" y1=\"" << num(kMarginTop + plot_h)
            << "\" x2=\"" << num(sx(fx)) << "\" y2=\"" << num(kMarginTop + plot_h + 5)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(sx(fx)) << "\" y=\"" << num(kMarginTop + plot_h + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(std::round(fx * 100.0) / 100.0) << "</text>\n";
        svg << "<line x1=\"" << num(kMarginLeft - 5) << "\" y1=\"" << num(sy(fy))
            << "\" x2=\"" << num(kMarginLeft) << "\" y2=\"" << num(sy(fy))
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(kMarginLeft - 9) << "\" y=\"" << num(sy(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(std::round(fy * 100.0) / 100.0) << "</text>\n";
    }

    if (vertical_marker && *vertical_marker >= xr.lo && *vertical_marker <= xr.hi) {
        svg << "<line x1=\"" << num(sx(*vertical_marker)) << "\" y1=\""
            << num(kMarginTop) << "\" x2=\"" << num(sx(*vertical_marker)) << "\" y2=\""
            << num(kMarginTop + plot_h)
            << "\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
            << "points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (i > 0) svg << ' ';
            svg << num(sx(series[s].x[i])) << ',' << num(sy(series[s].y[i]));
        }
        svg << "\"/>\n";
        const double ly = kMarginTop + 14.0 * static_cast<double>(s);
        svg << "<line x1=\"" << num(kWidth - kMarginRight + 10) << "\" y1=\"" << num(ly)
            << "\" x2=\"" << num(kWidth - kMarginRight + 30) << "\" y2=\"" << num(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << num(kWidth - kMarginRight + 34) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].label
            << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_plot: cannot open " + path);
    out << svg.str();
    if (!out) throw std::runtime_error("emit_plot: write failed for " + path);
}

}  // namespace marketsim
