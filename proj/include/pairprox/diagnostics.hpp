#pragma once

// Post-hoc checks on iterate traces: the per-step inequality behind the
// inertial method's convergence proof, summability of squared kernel steps,
// contraction towards a solution under strong pair monotonicity, and
// log-linear rate fits. All functions are pure in (trace, kernel, reference).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pairprox/operators.hpp"
#include "pairprox/trace.hpp"

namespace pairprox {

/// a_n = ||v(x_n) - v(x*)||^2 must satisfy
///   a_{n+1} - a_n - α_n (a_n - a_{n-1}) <= (α_n - 1) ||v(x_{n+1}) - v(x_n)||^2 + 2 α_n ||v(x_n) - v(x_{n-1})||^2
/// whenever (F, v) is monotone. A violation witnesses non-monotonicity along the trajectory.
struct Lemma41Report {
    std::vector<std::pair<std::size_t, double>> slacks;      // (n, lhs - rhs) for every n
    std::vector<std::pair<std::size_t, double>> violations;  // slack > 1e-10 max(1, a_n)
};

/// Throws MissingReference without x_star (falls back to trace.reference),
/// PreconditionError when F(x_star) is not ~0 (1e-8).
[[nodiscard]] Lemma41Report check_lemma41(const IterateTrace& trace, const KernelSpec& kernel,
                                          const Operator& f, std::optional<Vec> x_star = std::nullopt);

struct SummabilityReport {
    std::vector<double> deltas;        // δ_n = ||v(x_n) - v(x_{n-1})||^2, n = 1..N
    std::vector<double> partial_sums;
    double tail = 0.0;                 // Σ_{n > N/2} δ_n
};

[[nodiscard]] SummabilityReport check_summability(const IterateTrace& trace, const KernelSpec& kernel);

struct ContractionReport {
    std::vector<std::pair<std::size_t, double>> ratios;  // ||v(x_{n+1})-v(x*)|| / ||v(y_n)-v(x*)||
    double kappa = 0.0;        // 1 / (1 + β γ L^-2)
    double max_ratio = 0.0;
    double lipschitz = 0.0;    // L = ||B||_2
    double alpha_sup = 0.0;    // sup α_n on the trace
    double alpha_tilde = 0.0;  // (1 - κ²) / 2
    double rho = 0.0;          // sqrt(κ²(1 + 5α) + α̃)
    bool rho_below_one = false;
};

/// Throws PreconditionError for beta <= 0 or gamma_inf <= 0, MissingReference without x_star.
[[nodiscard]] ContractionReport check_contraction(const IterateTrace& trace, const KernelSpec& kernel,
                                                  double beta, double gamma_inf,
                                                  std::optional<Vec> x_star = std::nullopt);

struct RateFit {
    double rho_hat = 0.0;
    double r_squared = 0.0;
    std::size_t window_begin = 0;
    std::size_t window_end = 0;
};

/// Least-squares slope of log(series) on the last half of the horizon, where the
/// horizon stops before the first entry <= 1e-15. Throws NonPositive when fewer than
/// five usable entries remain.
[[nodiscard]] RateFit estimate_linear_rate(const std::vector<double>& series);

/// ||B(x_next - x*)|| / ||B(x - x*)|| per row, skipping vanishing denominators.
[[nodiscard]] std::vector<double> kernel_error_ratios(const IterateTrace& trace, const Mat& kernel,
                                                      const Vec& x_star);

/// Euclidean distance from x to {z : Az = b}, via the pseudo-inverse of A.
/// Assumes the system is consistent.
[[nodiscard]] double distance_to_solution_set(const Mat& a, const Vec& b, const Vec& x);

struct CertificateReport {
    std::optional<Lemma41Report> lemma41;
    std::optional<SummabilityReport> summability;
    std::optional<ContractionReport> contraction;

    /// "key: value" lines.
    [[nodiscard]] std::string to_text() const;
    [[nodiscard]] std::string violations_csv() const;
    [[nodiscard]] std::string ratios_csv() const;
};

}  // namespace pairprox
