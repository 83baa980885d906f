#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairprox/trace.hpp"

namespace pairprox::app {

inline constexpr std::string_view kTraceHeader = "n,step_gap,v_gap,residual,err_to_ref";

struct TraceRow {
    std::size_t n = 0;
    double step_gap = 0.0;
    double v_gap = 0.0;
    double residual = 0.0;
    std::optional<double> err_to_ref;
};

/// One row per iteration, 17 significant digits; err_to_ref empty without a reference.
[[nodiscard]] std::string trace_to_csv(const IterateTrace& trace);
/// Throws IoError on a malformed header or row.
[[nodiscard]] std::vector<TraceRow> parse_trace_csv(std::string_view text);

}  // namespace pairprox::app
