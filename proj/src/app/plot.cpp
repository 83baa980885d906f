#include "pairprox/app/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace pairprox::app {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_log_plot(const std::vector<PlotSeries>& series, const std::string& title,
                            const std::string& y_label) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::size_t n_max = 1;
    for (const auto& s : series) {
        n_max = std::max(n_max, s.values.size());
        for (double v : s.values) {
            if (v > 0 && std::isfinite(v)) {
                lo = std::min(lo, std::log10(v));
                hi = std::max(hi, std::log10(v));
            }
        }
    }
    if (!std::isfinite(lo)) lo = -1, hi = 0;
    lo = std::floor(lo);
    hi = std::max(std::ceil(hi), lo + 1);

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double n) { return kLeft + pw * n / static_cast<double>(n_max); };
    auto py = [&](double lv) { return kTop + ph * (hi - lv) / (hi - lo); };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
                      fmt(kHeight) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(kLeft) + "\" y=\"20\" font-size=\"14\">" + escape(title) + "</text>\n";
    svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    const int decades = static_cast<int>(hi - lo);
    const int step = std::max(1, decades / 8);
    for (int d = static_cast<int>(lo); d <= static_cast<int>(hi); d += step) {
        const double y = py(d);
        svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft + pw) + "\" y2=\"" + fmt(y) +
               "\" stroke=\"#ddd\"/>\n";
        svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">1e" +
               std::to_string(d) + "</text>\n";
    }
    svg += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 12) + "\" text-anchor=\"middle\">n (0.." +
           std::to_string(n_max) + ")</text>\n";
    svg += "<text x=\"14\" y=\"" + fmt(kTop + ph / 2) + "\" transform=\"rotate(-90 14 " + fmt(kTop + ph / 2) +
           ")\" text-anchor=\"middle\">" + escape(y_label) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kColors[k % std::size(kColors)];
        std::string points;
        for (std::size_t i = 0; i < series[k].values.size(); ++i) {
            const double v = series[k].values[i];
            if (!(v > 0) || !std::isfinite(v)) continue;
            points += fmt(px(static_cast<double>(i))) + "," + fmt(py(std::log10(v))) + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
               points + "\"/>\n";
        const double ly = kTop + 14.0 * static_cast<double>(k + 1);
        svg += "<line x1=\"" + fmt(kLeft + pw + 10) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" + fmt(kLeft + pw + 30) +
               "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt(kLeft + pw + 34) + "\" y=\"" + fmt(ly) + "\">" + escape(series[k].label) +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace pairprox::app
