#include "anklekit/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "anklekit/csvio.hpp"
#include "anklekit/errors.hpp"

namespace anklekit::svgplot {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

std::string render_line_plot(const PlotSpec& spec, const std::vector<Series>& series) {
    if (series.empty()) throw ComputeError("svg plot: no series");
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw ComputeError("svg plot: ragged series");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    }
    if (!(x_max > x_min)) x_max = x_min + 1.0;
    if (!(y_max > y_min)) y_max = y_min + 1.0;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double ml = 64, mr = 16, mt = 34, mb = 46;
    const double pw = spec.width - ml - mr;
    const double ph = spec.height - mt - mb;
    auto sx = [&](double x) { return ml + pw * (x - x_min) / (x_max - x_min); };
    auto sy = [&](double y) { return mt + ph * (1.0 - (y - y_min) / (y_max - y_min)); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
       << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
    os << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"14\">" << spec.title << "</text>\n";

    // frame and ticks
    os << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw)
       << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#444444\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 5.0;
        const double yv = y_min + (y_max - y_min) * i / 5.0;
        os << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << num(mt + ph) << "\" x2=\""
           << num(sx(xv)) << "\" y2=\"" << num(mt + ph + 4) << "\" stroke=\"#444444\"/>\n";
        os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(mt + ph + 18)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << tick_label(xv) << "</text>\n";
        os << "<line x1=\"" << num(ml - 4) << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << num(ml)
           << "\" y2=\"" << num(sy(yv)) << "\" stroke=\"#444444\"/>\n";
        os << "<text x=\"" << num(ml - 7) << "\" y=\"" << num(sy(yv) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << tick_label(yv) << "</text>\n";
    }
    if (y_min < 0.0 && y_max > 0.0) {
        os << "<line x1=\"" << num(ml) << "\" y1=\"" << num(sy(0.0)) << "\" x2=\"" << num(ml + pw)
           << "\" y2=\"" << num(sy(0.0)) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    }

    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) os << ' ';
            os << num(sx(s.x[i])) << ',' << num(sy(s.y[i]));
        }
        os << "\"/>\n";
    }

    // legend
    double ly = mt + 14;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        os << "<line x1=\"" << num(ml + 10) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(ml + 34)
           << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(ml + 40) << "\" y=\"" << num(ly + 4)
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        ly += 16;
    }

    os << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 10
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
       << spec.x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << spec.height / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
          "transform=\"rotate(-90 16 " << spec.height / 2 << ")\">" << spec.y_label
       << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

void write_line_plot(const std::string& path, const PlotSpec& spec,
                     const std::vector<Series>& series) {
    csvio::write_file(path, render_line_plot(spec, series));
}

} // namespace anklekit::svgplot
