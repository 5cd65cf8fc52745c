// Copyright 2026 The qreset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qreset/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qreset::cli {

namespace {

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string px(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<PlotSeries>& series, int width, int height) {
    const double left = 70, right = 200, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series) {
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (std::isfinite(s.x[k]) && std::isfinite(s.y[k])) {
                x_min = std::min(x_min, s.x[k]);
                x_max = std::max(x_max, s.x[k]);
                y_min = std::min(y_min, s.y[k]);
                y_max = std::max(y_max, s.y[k]);
            }
        }
    }
    if (!std::isfinite(x_min)) {
        x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    }
    y_min = std::min(y_min, 0.0);
    if (x_max <= x_min) x_max = x_min + 1;
    if (y_max <= y_min) y_max = y_min + 1;
    y_max *= 1.05;

    auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << px(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n"
        << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\"" << px(plot_w) << "\" height=\""
        << px(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 5; ++k) {
        const double xv = x_min + (x_max - x_min) * k / 5.0;
        const double yv = y_min + (y_max - y_min) * k / 5.0;
        svg << "<line x1=\"" << px(sx(xv)) << "\" y1=\"" << px(top + plot_h) << "\" x2=\"" << px(sx(xv))
            << "\" y2=\"" << px(top + plot_h + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(sx(xv)) << "\" y=\"" << px(top + plot_h + 18) << "\" text-anchor=\"middle\">"
            << fmt(xv) << "</text>\n"
            << "<line x1=\"" << px(left - 5) << "\" y1=\"" << px(sy(yv)) << "\" x2=\"" << px(left) << "\" y2=\""
            << px(sy(yv)) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(left - 8) << "\" y=\"" << px(sy(yv) + 4) << "\" text-anchor=\"end\">" << fmt(yv)
            << "</text>\n";
    }
    svg << "<text x=\"" << px(left + plot_w / 2) << "\" y=\"" << px(height - 12.0) << "\" text-anchor=\"middle\">"
        << escape(x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << px(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << px(top + plot_h / 2) << ")\">" << escape(y_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        const char* color = kPalette[(s / 2) % std::size(kPalette)];
        if (ser.markers) {
            for (std::size_t k = 0; k < ser.x.size(); ++k) {
                if (std::isfinite(ser.x[k]) && std::isfinite(ser.y[k])) {
                    svg << "<circle cx=\"" << px(sx(ser.x[k])) << "\" cy=\"" << px(sy(ser.y[k]))
                        << "\" r=\"3\" fill=\"none\" stroke=\"" << color << "\"/>\n";
                }
            }
        } else {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (std::size_t k = 0; k < ser.x.size(); ++k) {
                if (std::isfinite(ser.x[k]) && std::isfinite(ser.y[k])) {
                    svg << (first ? "" : " ") << px(sx(ser.x[k])) << "," << px(sy(ser.y[k]));
                    first = false;
                }
            }
            svg << "\"/>\n";
        }
        const double ly = top + 14 + 18.0 * static_cast<double>(s);
        const double lx = left + plot_w + 12;
        if (ser.markers) {
            svg << "<circle cx=\"" << px(lx + 10) << "\" cy=\"" << px(ly - 4) << "\" r=\"3\" fill=\"none\" stroke=\""
                << color << "\"/>\n";
        } else {
            svg << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4) << "\" x2=\"" << px(lx + 20) << "\" y2=\""
                << px(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        }
        svg << "<text x=\"" << px(lx + 26) << "\" y=\"" << px(ly) << "\">" << escape(ser.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace qreset::cli
