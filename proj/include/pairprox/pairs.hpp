#pragma once

// Certification, refutation and construction of monotone operator pairs.
//
// For linear maps the pair (A, B) is monotone iff zᵀAᵀBz >= 0 for all z, i.e.
// iff sym(AᵀB) is positive semidefinite. Nonlinear pairs are only sampled:
// a pass is reported as inconclusive, never as monotone.

#include <cstdint>
#include <optional>
#include <utility>

#include "pairprox/linalg.hpp"
#include "pairprox/operators.hpp"

namespace pairprox {

enum class PairStatus { monotone, strongly_monotone, not_monotone, inconclusive };
enum class CertificateMethod { psd_exact, sampled };

[[nodiscard]] const char* to_string(PairStatus s) noexcept;
[[nodiscard]] const char* to_string(CertificateMethod m) noexcept;

struct PairCertificate {
    PairStatus status = PairStatus::inconclusive;
    double beta = 0.0;        // strong-monotonicity modulus when status == strongly_monotone
    double lambda_min = 0.0;  // exact λ_min(sym(AᵀB)) or sampled minimum Rayleigh ratio
    double scale = 0.0;       // ||AᵀB||_max (linear case)
    CertificateMethod method = CertificateMethod::psd_exact;
    std::optional<Vec> witness;                 // unit z with zᵀAᵀBz < 0 (linear)
    std::optional<std::pair<Vec, Vec>> sample;  // violating (x, y) (sampled)

    /// True for monotone and strongly_monotone.
    [[nodiscard]] bool is_monotone() const noexcept {
        return status == PairStatus::monotone || status == PairStatus::strongly_monotone;
    }
};

/// Tolerance for the linear PSD test: 1e-8 relative to ||AᵀB||_max.
inline constexpr double kPairTolRel = 1e-8;
/// Violation threshold for sampled inner products.
inline constexpr double kSampledViolation = 1e-10;

[[nodiscard]] PairCertificate certify_linear_pair(const Mat& a, const Mat& b);

/// Zero cutoff used for "zero" eigen/singular values: 1e-10 * max(1, max |d|).
[[nodiscard]] double zero_threshold(const Vec& spectrum);

enum class CheckMode { checked, unchecked };

/// B = A + A1; requires A1ᵀA monotone unless mode is unchecked.
/// Throws HypothesisViolated carrying a unit witness z with zᵀA1ᵀAz < 0.
[[nodiscard]] KernelSpec construct_kernel_perturbation(const Mat& a, const Mat& a1,
                                                       CheckMode mode = CheckMode::checked);

/// A = O D Oᵀ, zero entries of D replaced by `replacement`, B = O D' Oᵀ.
[[nodiscard]] KernelSpec construct_kernel_symmetric(const Mat& a, double replacement = 1.0);

/// A = U Σ Vᵀ, zero singular values replaced by `replacement`, B = U D' Vᵀ.
/// Then AᵀB = V Σ D' Vᵀ is positive semidefinite.
[[nodiscard]] KernelSpec construct_kernel_factored(const Mat& a, double replacement = 1.0);

/// Samples pairs uniformly in [lower, upper]; first pair with
/// <f(x) - f(y), B(x - y)> < -1e-10 refutes. Otherwise inconclusive with the
/// smallest observed Rayleigh ratio in lambda_min.
[[nodiscard]] PairCertificate certify_nonlinear_pair_sampled(const Operator& f, const KernelSpec& v,
                                                             const Vec& lower, const Vec& upper,
                                                             std::size_t samples, std::uint64_t seed);

struct LocalStrongMonotonicityEstimate {
    Vec center;
    double radius = 0.0;
    double alpha_hat = 0.0;     // min sampled <f(x)-f(y), J(x-y)> / ||x-y||^2
    std::size_t samples = 0;
    double c = 0.0;             // σ_min of the Jacobian at the center
    double theoretical_floor = 0.0;  // c^2 / 2
    Mat jacobian;               // v(x) = J x with J = f'(center)
};

/// Throws SingularJacobian when f'(center) fails the LU pivot test.
[[nodiscard]] LocalStrongMonotonicityEstimate estimate_local_strong_monotonicity(
    const Operator& f, const Vec& center, double radius, std::size_t samples, std::uint64_t seed);

}  // namespace pairprox
