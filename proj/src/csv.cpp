#include "pairprox/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pairprox {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view text) {
    const std::string field(trim(text));
    if (field.empty()) throw IoError("empty numeric field");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE) {
        throw IoError("not a number: '" + field + "'");
    }
    return v;
}

std::vector<std::vector<double>> parse_csv_numbers(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const auto line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            row.push_back(parse_double(line.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

Mat read_matrix_csv(const std::filesystem::path& path) {
    const auto rows = parse_csv_numbers(read_text_file(path));
    if (rows.empty()) throw IoError(path.string() + ": no rows");
    const std::size_t cols = rows.front().size();
    std::vector<double> flat;
    for (const auto& r : rows) {
        if (r.size() != cols) throw IoError(path.string() + ": ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Mat(rows.size(), cols, std::move(flat));
}

Vec read_vector_csv(const std::filesystem::path& path) {
    const Mat m = read_matrix_csv(path);
    if (m.rows() != 1 && m.cols() != 1) throw IoError(path.string() + ": not a single row or column");
    return Vec(std::vector<double>(m.values().begin(), m.values().end()));
}

void write_matrix_csv(const std::filesystem::path& path, const Mat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    write_text_file(path, out);
}

void write_vector_csv(const std::filesystem::path& path, const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += format_double(v[i]);
        out += '\n';
    }
    write_text_file(path, out);
}

}  // namespace pairprox
