#pragma once

#include <optional>
#include <string>
#include <vector>

namespace marketsim {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Self-contained SVG line chart: axes, tick labels, legend, and an optional
// vertical marker (used for the AI introduction tick). Byte-identical output
// for identical input. Throws std::invalid_argument on empty input and
// std::runtime_error on I/O failure.
void emit_plot(const std::vector<PlotSeries>& series, const std::string& title,
               const std::string& path,
               std::optional<double> vertical_marker = std::nullopt);

}  // namespace marketsim
