#pragma once

#include <string>
#include <vector>

namespace anklekit::svgplot {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#000000";
    std::string label;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 760;
    int height = 460;
};

// Self-contained deterministic SVG line plot; text output only.
std::string render_line_plot(const PlotSpec& spec, const std::vector<Series>& series);
void write_line_plot(const std::string& path, const PlotSpec& spec,
                     const std::vector<Series>& series);

} // namespace anklekit::svgplot
