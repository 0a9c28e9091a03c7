#pragma once

#include <span>
#include <string>

namespace spinphase {

struct PlotLabels
{
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Self-contained SVG document: one polyline, axes, five ticks per axis.
/// Non-finite y values break the line.
std::string render_svg_polyline(std::span<double const> xs,
                                std::span<double const> ys,
                                PlotLabels const& labels);

}  // namespace spinphase
