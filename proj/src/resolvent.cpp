#include "pairprox/resolvent.hpp"

#include <cmath>

#include "pairprox/errors.hpp"

namespace pairprox {
namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw PreconditionError("resolvent: gamma must be > 0");
}

}  // namespace

Vec resolvent_affine(const Mat& a, const Vec& b, const Mat& kernel, double gamma, const Vec& y) {
    check_gamma(gamma);
    if (a.rows() != kernel.rows() || a.cols() != kernel.cols() || y.size() != a.cols() || b.size() != a.rows()) {
        throw DimensionMismatch("resolvent_affine: dimensions differ");
    }
    return lu_solve(gamma * a + kernel, kernel * y + gamma * b);
}

Vec resolvent_nonlinear(const Operator& f, const Mat& kernel, double gamma, const Vec& y,
                        const InnerSolverConfig& cfg, const Vec& warm_start) {
    check_gamma(gamma);
    if (!(cfg.tol > 0.0) || cfg.max_iters < 1) throw PreconditionError("InnerSolverConfig invalid");
    const std::size_t n = dimension(f);
    if (kernel.rows() != n || y.size() != n || warm_start.size() != n) {
        throw DimensionMismatch("resolvent_nonlinear: dimensions differ");
    }
    if (!warm_start.all_finite()) throw NonFinite("resolvent_nonlinear: warm start not finite");

    const Vec by = kernel * y;
    const double target = cfg.tol * std::max(1.0, norm_inf(by));
    auto residual = [&](const Vec& x) { return gamma * eval(f, x) + kernel * x - by; };

    Vec x = warm_start;
    Vec g = residual(x);
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
        if (norm_inf(g) <= target) return x;

        Mat jg = gamma * jacobian(f, x) + kernel;
        Vec step;
        try {
            step = LuFactor(jg).solve(g);
        } catch (const SingularMatrix&) {
            throw InnerSingular("resolvent_nonlinear: Newton matrix gamma*f'(x) + B is singular");
        }

        // backtracking on ||G||_2
        const double g0 = norm2(g);
        double t = 1.0;
        while (true) {
            Vec trial = x - t * step;
            Vec gt;
            try {
                gt = residual(trial);
            } catch (const NonFinite&) {
                gt = Vec();
            }
            if (!gt.empty() && norm2(gt) < g0) {
                x = std::move(trial);
                g = std::move(gt);
                break;
            }
            t *= 0.5;
            if (t < cfg.min_damping) {
                if (norm_inf(g) <= 10.0 * target) return x;  // stalled at rounding level
                throw InnerSingular("resolvent_nonlinear: damping exhausted");
            }
        }
    }
    if (norm_inf(g) <= target) return x;
    throw InnerNoConvergence("resolvent_nonlinear: inner iteration cap reached");
}

Vec warped_resolvent(const Operator& f, const KernelSpec& kernel, double gamma, const Vec& y,
                     const InnerSolverConfig& cfg, const Vec& warm_start) {
    if (const auto* aff = std::get_if<AffineOperator>(&f)) {
        return resolvent_affine(aff->a, aff->b, kernel.b, gamma, y);
    }
    return resolvent_nonlinear(f, kernel.b, gamma, y, cfg, warm_start);
}

double resolvent_equation_residual(const Operator& f, const KernelSpec& kernel, double gamma, const Vec& y,
                                   const Vec& x) {
    return norm_inf(gamma * eval(f, x) + kernel.apply(x) - kernel.apply(y));
}

double fixed_point_residual(const Operator& f, const KernelSpec& kernel, double gamma, const Vec& x,
                            const InnerSolverConfig& cfg) {
    return norm_inf(warped_resolvent(f, kernel, gamma, x, cfg, x) - x);
}

}  // namespace pairprox
