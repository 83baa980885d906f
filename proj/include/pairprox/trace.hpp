#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pairprox/linalg.hpp"

namespace pairprox {

/// One outer step x -> y -> x_next.
///
/// For GIPPA, row n holds x = x_n, y = y_n = x_n + α_n(x_n - x_{n-1}) and
/// x_next = x_{n+1}. Newton-type runs store y = x and alpha = 0, with
/// gamma holding the step size h.
struct IterateRecord {
    std::size_t n = 0;
    Vec x;
    Vec y;
    Vec x_next;
    double gamma = 0.0;
    double alpha = 0.0;
    double step_gap = 0.0;  // ||x_next - y||_inf
    double v_gap = 0.0;     // ||v(y) - v(x_next)||_2
    double u_norm = 0.0;    // ||v(y) - v(x_next)||_inf / gamma
    double residual = 0.0;  // ||F(x_next)||_inf
};

enum class Termination { step_gap, residual, max_iter };

[[nodiscard]] const char* to_string(Termination t) noexcept;

struct IterateTrace {
    Vec x0;  // x_0; records[0].x is x_1
    std::vector<IterateRecord> records;
    Termination termination = Termination::max_iter;
    std::optional<Vec> reference;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t iterations() const noexcept { return records.size(); }
    [[nodiscard]] const Vec& last_iterate() const;
    /// x_0, x_1, ..., x_N with x_N the final iterate.
    [[nodiscard]] std::vector<Vec> iterates() const;
    /// ||x_next - reference||_2 per row; empty without a reference.
    [[nodiscard]] std::vector<double> errors_to_reference() const;
};

}  // namespace pairprox
