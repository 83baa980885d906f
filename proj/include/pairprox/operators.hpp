#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "pairprox/linalg.hpp"

namespace pairprox {

/// F(x) = A x - b.
struct AffineOperator {
    Mat a;
    Vec b;

    AffineOperator(Mat a, Vec b);
    [[nodiscard]] std::size_t dimension() const noexcept { return b.size(); }
};

using Evaluator = std::function<Vec(const Vec&)>;
using JacobianFn = std::function<Mat(const Vec&)>;

/// A single-valued nonlinear map with optional analytic Jacobian.
///
/// Evaluators must be pure. When a Jacobian is supplied, construction checks it
/// against central differences at 20 seeded points in [-1, 1]^n.
class NonlinearOperator {
public:
    NonlinearOperator(std::string name, std::size_t dimension, Evaluator evaluator,
                      std::optional<JacobianFn> jacobian = std::nullopt,
                      std::optional<double> lipschitz_hint = std::nullopt);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
    [[nodiscard]] bool has_jacobian() const noexcept { return jacobian_.has_value(); }
    [[nodiscard]] std::optional<double> lipschitz_hint() const noexcept { return lipschitz_hint_; }

    /// Throws NonFinite if the evaluator returns NaN/Inf.
    [[nodiscard]] Vec operator()(const Vec& x) const;
    /// Analytic Jacobian; precondition has_jacobian().
    [[nodiscard]] Mat analytic_jacobian(const Vec& x) const;

private:
    std::string name_;
    std::size_t dimension_;
    Evaluator evaluator_;
    std::optional<JacobianFn> jacobian_;
    std::optional<double> lipschitz_hint_;
};

using Operator = std::variant<AffineOperator, NonlinearOperator>;

[[nodiscard]] std::size_t dimension(const Operator& f);
[[nodiscard]] Vec eval(const Operator& f, const Vec& x);
/// Central differences with step sqrt(eps) * max(1, |x_j|).
[[nodiscard]] Mat jacobian_fd(const Operator& f, const Vec& x);
/// A for affine operators, the analytic Jacobian when present, else jacobian_fd.
[[nodiscard]] Mat jacobian(const Operator& f, const Vec& x);

/// Upper estimate of the Lipschitz constant on the box [lower, upper]:
/// the hint when given, ||A||_2 for affine maps, otherwise the largest
/// ||jacobian_fd||_2 over `samples` seeded points.
[[nodiscard]] double estimate_lipschitz(const Operator& f, const Vec& lower, const Vec& upper,
                                        std::size_t samples = 50, std::uint64_t seed = 7);

enum class KernelProvenance { user, perturbation, symmetric, factored, identity };

[[nodiscard]] const char* to_string(KernelProvenance p) noexcept;
[[nodiscard]] std::optional<KernelProvenance> provenance_from_string(const std::string& s);

/// Linear kernel v(x) = B x.
struct KernelSpec {
    Mat b;
    KernelProvenance provenance = KernelProvenance::user;
    double tau = 0.0;          // zero threshold used by the constructing routine
    double replacement = 1.0;  // value substituted for zero spectral entries

    [[nodiscard]] static KernelSpec identity(std::size_t n);
    [[nodiscard]] static KernelSpec user(Mat b);

    [[nodiscard]] std::size_t dimension() const noexcept { return b.rows(); }
    [[nodiscard]] Vec apply(const Vec& x) const { return b * x; }
    /// Lipschitz constant L = ||B||_2.
    [[nodiscard]] double lipschitz() const { return norm2(b); }
};

/// Named built-in problems: "example1" (affine) and "example2" (nonlinear).
[[nodiscard]] Operator builtin_operator(const std::string& name);
[[nodiscard]] NonlinearOperator example2_operator();
[[nodiscard]] AffineOperator example1_operator();

}  // namespace pairprox
