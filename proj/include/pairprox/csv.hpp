#pragma once

// Plain CSV for matrices and vectors: one row per matrix row, decimal floats,
// no header. A vector file may be a single row or a single column.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pairprox/linalg.hpp"

namespace pairprox {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest text that round-trips: printf "%.17g".
[[nodiscard]] std::string format_double(double v);
/// Strict parse of a whole field; throws IoError on trailing garbage.
[[nodiscard]] double parse_double(std::string_view text);

[[nodiscard]] std::vector<std::vector<double>> parse_csv_numbers(std::string_view text);

[[nodiscard]] Mat read_matrix_csv(const std::filesystem::path& path);
[[nodiscard]] Vec read_vector_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Mat& m);
void write_vector_csv(const std::filesystem::path& path, const Vec& v);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pairprox
