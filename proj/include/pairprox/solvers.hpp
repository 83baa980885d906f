#pragma once

// Outer iterations: the inertial warped-resolvent method (GIPPA) with its
// zero-inertia (GPPA) and identity-kernel (PPA) specializations, the
// quasi-Newton iteration with a frozen reference Jacobian, and classical Newton.

#include <cstdint>
#include <optional>
#include <string>

#include "pairprox/operators.hpp"
#include "pairprox/resolvent.hpp"
#include "pairprox/trace.hpp"

namespace pairprox {

/// Parameter sequence indexed by n >= 0.
class Schedule {
public:
    enum class Kind { constant, offset_inverse, capped_ramp };

    /// c
    static Schedule constant(double c);
    /// a + b / (n + c)
    static Schedule offset_inverse(double a, double b, double c);
    /// min(cap, n / (n + c))
    static Schedule capped_ramp(double cap, double c);

    [[nodiscard]] double operator()(std::size_t n) const noexcept;
    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double p0() const noexcept { return p0_; }
    [[nodiscard]] double p1() const noexcept { return p1_; }
    [[nodiscard]] double p2() const noexcept { return p2_; }
    [[nodiscard]] std::string describe() const;

private:
    Schedule(Kind kind, double p0, double p1, double p2) : kind_(kind), p0_(p0), p1_(p1), p2_(p2) {}
    Kind kind_;
    double p0_, p1_, p2_;
};

struct SolverConfig {
    Schedule gamma = Schedule::constant(1.0);
    Schedule alpha = Schedule::constant(0.0);
    double tol_step = 1e-10;
    double tol_residual = 1e-10;
    std::size_t max_iter = 10000;
    Vec x0;
    Vec x1;
    InnerSolverConfig inner;
    /// Only copied into the trace for error reporting; the iteration never reads it.
    std::optional<Vec> reference;
};

struct ScheduleValidation {
    bool valid = true;  // γ_n > 0 finite and α_n ∈ [0, 1] on the horizon
    bool alpha_nondecreasing = true;
    double alpha_cap = 0.0;  // sup α_n
    double gamma_inf = 0.0;  // inf γ_n
    bool theory_satisfied = false;  // nondecreasing α, sup α < 1/3, inf γ > 0
};

/// Evaluates both schedules on n = 0..max_iter.
[[nodiscard]] ScheduleValidation validate_schedules(const SolverConfig& cfg);

/// GIPPA from (x0, x1). Stops when ||x_{n+1} - y_n||_inf <= tol_step,
/// when ||F(x_{n+1})||_inf <= tol_residual, or at max_iter.
/// A singular resolvent system at γ_n is retried once at γ_n (1 + 1e-6).
/// Throws ResolventFailure(n), ScheduleInvalid.
[[nodiscard]] IterateTrace gippa_run(const Operator& f, const KernelSpec& kernel, const SolverConfig& cfg);
/// α ≡ 0.
[[nodiscard]] IterateTrace gppa_run(const Operator& f, const KernelSpec& kernel, SolverConfig cfg);
/// α ≡ 0, v = Id.
[[nodiscard]] IterateTrace ppa_run(const Operator& f, SolverConfig cfg);

/// Constants entering the quasi-Newton step size and contraction bound.
struct QuasiNewtonConstants {
    double alpha_hat = 0.0;    // local strong-monotonicity estimate of (f, f'(x*)·)
    double lipschitz_f = 0.0;  // L_f on the estimation ball
    double lipschitz_v = 0.0;  // σ_min(f'(x*)): ||v(x) - v(y)|| >= L_v ||x - y||
    double step = 0.0;         // α̂ / L_f^2
    double rate_bound = 0.0;   // sqrt(1 - α̂² / (L_f² L_v²))
};

[[nodiscard]] QuasiNewtonConstants estimate_quasi_newton_constants(const Operator& f, const Vec& reference,
                                                                   double radius, std::size_t samples = 4000,
                                                                   std::uint64_t seed = 11);

struct QuasiNewtonConfig {
    Vec reference_point;
    std::optional<double> step;
    std::optional<double> trust_radius;  // radius of W around v(x*) in v-space
    std::optional<double> estimation_radius;  // default 2 ||x0 - x*|| (floor 1e-3)
    double tol = 1e-10;
    std::size_t max_iter = 1000;
    std::uint64_t seed = 11;
};

/// x_{k+1} = x_k - h f'(x*)^{-1} f(x_k).
/// Throws SingularJacobian, LeftNeighborhood, NoConvergence.
[[nodiscard]] IterateTrace quasi_newton_run(const Operator& f, const QuasiNewtonConfig& cfg, const Vec& x0);

/// x_{k+1} = x_k - h f'(x_k)^{-1} f(x_k). Throws SingularJacobian(k), NoConvergence.
[[nodiscard]] IterateTrace newton_run(const Operator& f, const Vec& x0, double h, double tol,
                                      std::size_t max_iter);

}  // namespace pairprox
