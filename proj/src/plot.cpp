// Copyright 2026 The bopelites Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bopelites/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

#include "bopelites/errors.hpp"

namespace bopelites {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 460.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Series {
    std::string solver;
    std::vector<double> iteration;
    std::vector<double> mean;
    std::vector<double> lo;
    std::vector<double> hi;
};

std::vector<Series> group(const std::vector<SummaryRow>& summary) {
    std::vector<Series> out;
    for (const SummaryRow& r : summary) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Series& s) { return s.solver == r.solver; });
        if (it == out.end()) {
            out.push_back({r.solver, {}, {}, {}, {}});
            it = std::prev(out.end());
        }
        it->iteration.push_back(static_cast<double>(r.iteration));
        it->mean.push_back(r.mean_te);
        it->lo.push_back(r.mean_te - r.stderr_te);
        it->hi.push_back(r.mean_te + r.stderr_te);
    }
    return out;
}

} // namespace

std::string render_convergence_svg(const std::vector<SummaryRow>& summary, bool log_scale) {
    if (summary.empty()) {
        throw InvalidArgument("cannot plot an empty summary");
    }
    const std::vector<Series> series = group(summary);

    auto transform = [&](double v) { return log_scale ? std::log10(std::max(v, kLogFloor)) : std::max(v, 0.0); };

    double x_min = summary.front().iteration;
    double x_max = x_min;
    double y_min = log_scale ? std::log10(kLogFloor) : 0.0;
    double y_max = y_min;
    for (const Series& s : series) {
        for (std::size_t i = 0; i < s.iteration.size(); ++i) {
            x_min = std::min(x_min, s.iteration[i]);
            x_max = std::max(x_max, s.iteration[i]);
            y_max = std::max(y_max, transform(s.hi[i]));
        }
    }
    if (log_scale) {
        y_max = std::ceil(y_max);
    }
    if (x_max == x_min) {
        x_max = x_min + 1.0;
    }
    if (y_max <= y_min) {
        y_max = y_min + 1.0;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    // SVG y grows downward
    auto py = [&](double v) { return kTop + (1.0 - (transform(v) - y_min) / (y_max - y_min)) * plot_h; };
    auto py_raw = [&](double t) { return kTop + (1.0 - (t - y_min) / (y_max - y_min)) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";

    // axes and ticks as a single path
    std::string axes = "M" + num(kLeft) + " " + num(kTop) + " V" + num(kTop + plot_h) + " H" + num(kLeft + plot_w);
    std::string labels;
    const int x_ticks = 8;
    for (int t = 0; t <= x_ticks; ++t) {
        const double x = x_min + (x_max - x_min) * t / x_ticks;
        const double sx = px(x);
        axes += " M" + num(sx) + " " + num(kTop + plot_h) + " v5";
        labels += "<text x=\"" + num(sx) + "\" y=\"" + num(kTop + plot_h + 20) +
                  "\" text-anchor=\"middle\" font-size=\"11\">" + tick_label(std::round(x * 10) / 10) + "</text>\n";
    }
    if (log_scale) {
        for (double e = y_min; e <= y_max + 1e-9; e += 1.0) {
            const double sy = py_raw(e);
            axes += " M" + num(kLeft) + " " + num(sy) + " h-5";
            labels += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(sy + 4) +
                      "\" text-anchor=\"end\" font-size=\"11\">1e" + tick_label(e) + "</text>\n";
        }
    } else {
        const int y_ticks = 5;
        for (int t = 0; t <= y_ticks; ++t) {
            const double v = y_min + (y_max - y_min) * t / y_ticks;
            const double sy = py_raw(v);
            axes += " M" + num(kLeft) + " " + num(sy) + " h-5";
            labels += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(sy + 4) +
                      "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(std::round(v * 100) / 100) +
                      "</text>\n";
        }
    }
    svg += "<path class=\"axes\" d=\"" + axes + "\" stroke=\"black\" fill=\"none\"/>\n";
    svg += labels;
    svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 15) +
           "\" text-anchor=\"middle\" font-size=\"13\">iteration</text>\n";
    svg += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
           num(kTop + plot_h / 2) + ")\">" + (log_scale ? "total error (log)" : "total error") + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const Series& s = series[k];
        const char* colour = kPalette[k % kPalette.size()];
        std::string band;
        for (std::size_t i = 0; i < s.iteration.size(); ++i) {
            band += num(px(s.iteration[i])) + "," + num(py(s.hi[i])) + " ";
        }
        for (std::size_t i = s.iteration.size(); i-- > 0;) {
            band += num(px(s.iteration[i])) + "," + num(py(s.lo[i])) + " ";
        }
        band.pop_back();
        svg += "<polygon class=\"band\" data-solver=\"" + s.solver + "\" points=\"" + band + "\" fill=\"" + colour +
               "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
        std::string line;
        for (std::size_t i = 0; i < s.iteration.size(); ++i) {
            line += num(px(s.iteration[i])) + "," + num(py(s.mean[i])) + " ";
        }
        line.pop_back();
        svg += "<polyline class=\"mean\" data-solver=\"" + s.solver + "\" points=\"" + line + "\" fill=\"none\" stroke=\"" +
               colour + "\" stroke-width=\"2\"/>\n";
        const double ly = kTop + 20.0 + 20.0 * static_cast<double>(k);
        svg += "<rect x=\"" + num(kWidth - kRight + 20) + "\" y=\"" + num(ly - 9) + "\" width=\"14\" height=\"10\" fill=\"" +
               colour + "\"/>\n";
        svg += "<text x=\"" + num(kWidth - kRight + 40) + "\" y=\"" + num(ly) + "\" font-size=\"12\">" + s.solver +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plots(const std::vector<SummaryRow>& summary, const std::filesystem::path& dir) {
    if (summary.empty()) {
        throw InvalidArgument("cannot plot an empty summary");
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    }
    write_text_file(dir / "te_linear.svg", render_convergence_svg(summary, false));
    write_text_file(dir / "te_log.svg", render_convergence_svg(summary, true));
}

} // namespace bopelites
