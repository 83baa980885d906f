#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pairprox::app {

struct PlotSeries {
    std::string label;
    std::vector<double> values;  // indexed by n; entries <= 0 are dropped
};

/// Static SVG of the series on a log10 y-axis. Output depends only on the inputs.
[[nodiscard]] std::string render_log_plot(const std::vector<PlotSeries>& series, const std::string& title,
                                          const std::string& y_label);

}  // namespace pairprox::app
