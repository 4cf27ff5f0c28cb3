#pragma once

#include <optional>
#include <span>
#include <string>

#include "sa/cli/csv.hpp"

namespace sa::cli {

struct PlotSpec {
    std::string title;
    std::string x_label = "n";
    std::string y_label;
    std::optional<double> target;
    bool logx = false;
};

/// Self-contained SVG: axes, ticks, one polyline, optional dashed target line.
std::string render_svg(std::span<const double> x, std::span<const double> y, const PlotSpec& spec);

/// Plots `channel` of a trajectory CSV against its first column.
std::string plot_channel(const CsvTable& table, const std::string& channel, std::optional<double> target,
                         bool logx);

} // namespace sa::cli
