#pragma once

// Warped resolvent J(y) = (γF + v)^{-1}(v(y)) for a linear kernel v(x) = Bx,
// i.e. the solution x of γF(x) + Bx = By.

#include <cstddef>

#include "pairprox/linalg.hpp"
#include "pairprox/operators.hpp"

namespace pairprox {

struct InnerSolverConfig {
    double tol = 1e-12;              // relative to max(1, ||By||_inf)
    std::size_t max_iters = 100;
    double min_damping = 1.0 / 1048576.0;  // 2^-20
};

/// Solves (γA + B)x = By + γb. Throws SingularMatrix if γA + B fails the pivot test.
[[nodiscard]] Vec resolvent_affine(const Mat& a, const Vec& b, const Mat& kernel, double gamma, const Vec& y);

/// Damped Newton on G(x) = γf(x) + Bx - By from `warm_start`.
/// Throws InnerSingular / InnerNoConvergence.
[[nodiscard]] Vec resolvent_nonlinear(const Operator& f, const Mat& kernel, double gamma, const Vec& y,
                                      const InnerSolverConfig& cfg, const Vec& warm_start);

/// Dispatches on the operator kind; warm_start is ignored for affine F.
[[nodiscard]] Vec warped_resolvent(const Operator& f, const KernelSpec& kernel, double gamma, const Vec& y,
                                   const InnerSolverConfig& cfg, const Vec& warm_start);

/// ||γF(x) + Bx - By||_inf.
[[nodiscard]] double resolvent_equation_residual(const Operator& f, const KernelSpec& kernel, double gamma,
                                                 const Vec& y, const Vec& x);

/// ||J(x) - x||_inf; vanishes exactly at zeros of F for well-posed problems.
[[nodiscard]] double fixed_point_residual(const Operator& f, const KernelSpec& kernel, double gamma,
                                          const Vec& x, const InnerSolverConfig& cfg = {});

}  // namespace pairprox
