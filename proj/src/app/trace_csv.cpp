#include "pairprox/app/trace_csv.hpp"

#include "pairprox/csv.hpp"

namespace pairprox::app {

std::string trace_to_csv(const IterateTrace& trace) {
    std::string out(kTraceHeader);
    out += '\n';
    const auto errs = trace.errors_to_reference();
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const auto& r = trace.records[i];
        out += std::to_string(r.n);
        out += ',' + format_double(r.step_gap);
        out += ',' + format_double(r.v_gap);
        out += ',' + format_double(r.residual);
        out += ',';
        if (!errs.empty()) out += format_double(errs[i]);
        out += '\n';
    }
    return out;
}

std::vector<TraceRow> parse_trace_csv(std::string_view text) {
    std::vector<TraceRow> rows;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (header) {
            if (line != kTraceHeader) throw IoError("trace csv: unexpected header '" + std::string(line) + "'");
            header = false;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 5) throw IoError("trace csv: expected 5 fields");
        TraceRow row;
        row.n = static_cast<std::size_t>(parse_double(fields[0]));
        row.step_gap = parse_double(fields[1]);
        row.v_gap = parse_double(fields[2]);
        row.residual = parse_double(fields[3]);
        if (!fields[4].empty()) row.err_to_ref = parse_double(fields[4]);
        rows.push_back(row);
    }
    if (header) throw IoError("trace csv: missing header");
    return rows;
}

}  // namespace pairprox::app
