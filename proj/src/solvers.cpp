#include "pairprox/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pairprox/errors.hpp"
#include "pairprox/pairs.hpp"

namespace pairprox {

Schedule Schedule::constant(double c) { return {Kind::constant, c, 0.0, 0.0}; }
Schedule Schedule::offset_inverse(double a, double b, double c) { return {Kind::offset_inverse, a, b, c}; }
Schedule Schedule::capped_ramp(double cap, double c) { return {Kind::capped_ramp, cap, c, 0.0}; }

double Schedule::operator()(std::size_t n) const noexcept {
    const double x = static_cast<double>(n);
    switch (kind_) {
        case Kind::constant: return p0_;
        case Kind::offset_inverse: return p0_ + p1_ / (x + p2_);
        case Kind::capped_ramp: return std::min(p0_, x / (x + p1_));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string Schedule::describe() const {
    char buf[128];
    switch (kind_) {
        case Kind::constant: std::snprintf(buf, sizeof buf, "%g", p0_); break;
        case Kind::offset_inverse: std::snprintf(buf, sizeof buf, "%g + %g/(n + %g)", p0_, p1_, p2_); break;
        case Kind::capped_ramp: std::snprintf(buf, sizeof buf, "min(%g, n/(n + %g))", p0_, p1_); break;
    }
    return buf;
}

ScheduleValidation validate_schedules(const SolverConfig& cfg) {
    ScheduleValidation v;
    v.gamma_inf = std::numeric_limits<double>::infinity();
    double prev_alpha = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n <= cfg.max_iter; ++n) {
        const double g = cfg.gamma(n);
        const double a = cfg.alpha(n);
        if (!std::isfinite(g) || !(g > 0.0)) v.valid = false;
        if (!std::isfinite(a) || a < 0.0 || a > 1.0) v.valid = false;
        if (std::isfinite(g)) v.gamma_inf = std::min(v.gamma_inf, g);
        if (std::isfinite(a)) v.alpha_cap = std::max(v.alpha_cap, a);
        if (a < prev_alpha) v.alpha_nondecreasing = false;
        prev_alpha = a;
    }
    v.theory_satisfied = v.valid && v.alpha_nondecreasing && v.alpha_cap < 1.0 / 3.0 && v.gamma_inf > 0.0;
    return v;
}

IterateTrace gippa_run(const Operator& f, const KernelSpec& kernel, const SolverConfig& cfg) {
    const std::size_t n_dim = dimension(f);
    if (cfg.x0.size() != n_dim || cfg.x1.size() != n_dim || kernel.dimension() != n_dim) {
        throw DimensionMismatch("gippa_run: x0, x1, kernel and F must share a dimension");
    }
    if (!(cfg.tol_step > 0.0) || !(cfg.tol_residual > 0.0) || cfg.max_iter < 1) {
        throw PreconditionError("gippa_run: tolerances must be > 0 and max_iter >= 1");
    }
    const ScheduleValidation sv = validate_schedules(cfg);
    if (!sv.valid) throw ScheduleInvalid("gippa_run: gamma_n must be > 0 and alpha_n in [0, 1]");

    IterateTrace trace;
    trace.x0 = cfg.x0;
    trace.reference = cfg.reference;
    if (!sv.theory_satisfied) {
        trace.warnings.push_back("schedules outside convergence theory: alpha nondecreasing=" +
                                 std::string(sv.alpha_nondecreasing ? "yes" : "no") +
                                 ", sup alpha=" + std::to_string(sv.alpha_cap) + " (needs < 1/3)");
    }
    trace.records.reserve(std::min<std::size_t>(cfg.max_iter, 4096));

    Vec x_prev = cfg.x0;
    Vec x = cfg.x1;
    for (std::size_t n = 1; n <= cfg.max_iter; ++n) {
        double gamma = cfg.gamma(n);
        const double alpha = cfg.alpha(n);
        const Vec y = x + alpha * (x - x_prev);

        Vec x_next;
        try {
            try {
                x_next = warped_resolvent(f, kernel, gamma, y, cfg.inner, x);
            } catch (const SingularMatrix&) {
                gamma *= 1.0 + 1e-6;
                x_next = warped_resolvent(f, kernel, gamma, y, cfg.inner, x);
                trace.warnings.push_back("iteration " + std::to_string(n) +
                                         ": singular resolvent system, gamma perturbed by 1e-6");
            }
        } catch (const ResolventFailure&) {
            throw;
        } catch (const Error& e) {
            throw ResolventFailure("gippa_run: resolvent failed at iteration " + std::to_string(n) + ": " +
                                       e.what(),
                                   n);
        }

        IterateRecord rec;
        rec.n = n;
        rec.gamma = gamma;
        rec.alpha = alpha;
        rec.step_gap = norm_inf(x_next - y);
        const Vec vgap = kernel.apply(y - x_next);
        rec.v_gap = norm2(vgap);
        rec.u_norm = norm_inf(vgap) / gamma;
        rec.residual = norm_inf(eval(f, x_next));
        rec.x = x;
        rec.y = y;
        rec.x_next = x_next;
        trace.records.push_back(std::move(rec));

        const auto& last = trace.records.back();
        if (last.step_gap <= cfg.tol_step) {
            trace.termination = Termination::step_gap;
            return trace;
        }
        if (last.residual <= cfg.tol_residual) {
            trace.termination = Termination::residual;
            return trace;
        }
        x_prev = std::move(x);
        x = std::move(x_next);
    }
    trace.termination = Termination::max_iter;
    return trace;
}

IterateTrace gppa_run(const Operator& f, const KernelSpec& kernel, SolverConfig cfg) {
    cfg.alpha = Schedule::constant(0.0);
    return gippa_run(f, kernel, cfg);
}

IterateTrace ppa_run(const Operator& f, SolverConfig cfg) {
    cfg.alpha = Schedule::constant(0.0);
    return gippa_run(f, KernelSpec::identity(dimension(f)), cfg);
}

QuasiNewtonConstants estimate_quasi_newton_constants(const Operator& f, const Vec& reference, double radius,
                                                     std::size_t samples, std::uint64_t seed) {
    const auto est = estimate_local_strong_monotonicity(f, reference, radius, samples, seed);
    QuasiNewtonConstants k;
    k.alpha_hat = est.alpha_hat;
    k.lipschitz_v = est.c;
    Vec lower = reference;
    Vec upper = reference;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        lower[i] -= radius;
        upper[i] += radius;
    }
    k.lipschitz_f = estimate_lipschitz(f, lower, upper, std::max<std::size_t>(50, samples / 20), seed + 1);
    if (k.alpha_hat > 0.0 && k.lipschitz_f > 0.0) {
        k.step = k.alpha_hat / (k.lipschitz_f * k.lipschitz_f);
        const double q = k.alpha_hat / (k.lipschitz_f * k.lipschitz_v);
        k.rate_bound = std::sqrt(std::max(0.0, 1.0 - q * q));
    }
    return k;
}

IterateTrace quasi_newton_run(const Operator& f, const QuasiNewtonConfig& cfg, const Vec& x0) {
    const std::size_t n_dim = dimension(f);
    if (cfg.reference_point.size() != n_dim || x0.size() != n_dim) {
        throw DimensionMismatch("quasi_newton_run: dimensions differ");
    }
    if (cfg.step && !(*cfg.step > 0.0)) throw PreconditionError("quasi_newton_run: step must be > 0");
    if (cfg.trust_radius && !(*cfg.trust_radius > 0.0)) {
        throw PreconditionError("quasi_newton_run: trust radius must be > 0");
    }

    const Mat j_ref = jacobian(f, cfg.reference_point);
    std::optional<LuFactor> lu;
    try {
        lu.emplace(j_ref);
    } catch (const SingularMatrix&) {
        throw SingularJacobian("quasi_newton_run: f'(x*) is singular", 0);
    }

    double h = 0.0;
    if (cfg.step) {
        h = *cfg.step;
    } else {
        const double radius =
            cfg.estimation_radius.value_or(std::max(2.0 * norm2(x0 - cfg.reference_point), 1e-3));
        const auto k = estimate_quasi_newton_constants(f, cfg.reference_point, radius, 4000, cfg.seed);
        if (!(k.step > 0.0)) {
            throw PreconditionError("quasi_newton_run: no positive strong-monotonicity estimate; supply a step");
        }
        h = k.step;
    }

    const Vec v_ref = j_ref * cfg.reference_point;
    IterateTrace trace;
    trace.x0 = x0;
    Vec x = x0;
    Vec fx = eval(f, x);
    if (norm_inf(fx) <= cfg.tol) {
        trace.termination = Termination::residual;
        return trace;
    }
    for (std::size_t k = 0; k < cfg.max_iter; ++k) {
        Vec x_next = x - h * lu->solve(fx);
        if (cfg.trust_radius && norm2(j_ref * x_next - v_ref) > *cfg.trust_radius) {
            throw LeftNeighborhood("quasi_newton_run: iterate " + std::to_string(k + 1) +
                                   " left the trust neighborhood");
        }
        Vec f_next = eval(f, x_next);
        IterateRecord rec;
        rec.n = k + 1;
        rec.gamma = h;
        rec.step_gap = norm_inf(x_next - x);
        rec.v_gap = norm2(j_ref * (x - x_next));
        rec.u_norm = norm_inf(j_ref * (x - x_next)) / h;
        rec.residual = norm_inf(f_next);
        rec.x = x;
        rec.y = x;
        rec.x_next = x_next;
        trace.records.push_back(std::move(rec));
        x = std::move(x_next);
        fx = std::move(f_next);
        if (norm_inf(fx) <= cfg.tol) {
            trace.termination = Termination::residual;
            return trace;
        }
    }
    throw NoConvergence("quasi_newton_run: max_iter reached");
}

IterateTrace newton_run(const Operator& f, const Vec& x0, double h, double tol, std::size_t max_iter) {
    if (x0.size() != dimension(f)) throw DimensionMismatch("newton_run: dimensions differ");
    if (!(h > 0.0) || !(tol > 0.0)) throw PreconditionError("newton_run: h and tol must be > 0");

    IterateTrace trace;
    trace.x0 = x0;
    Vec x = x0;
    Vec fx = eval(f, x);
    // the Jacobian is factored before any residual test, so a singular f'(x_0) always surfaces
    for (std::size_t k = 0; k < max_iter; ++k) {
        Vec dx;
        try {
            dx = lu_solve(jacobian(f, x), fx);
        } catch (const SingularMatrix&) {
            throw SingularJacobian("newton_run: f'(x_k) singular at k = " + std::to_string(k), k);
        }
        Vec x_next = x - h * dx;
        Vec f_next = eval(f, x_next);
        IterateRecord rec;
        rec.n = k + 1;
        rec.gamma = h;
        rec.step_gap = norm_inf(x_next - x);
        rec.residual = norm_inf(f_next);
        rec.x = x;
        rec.y = x;
        rec.x_next = x_next;
        trace.records.push_back(std::move(rec));
        x = std::move(x_next);
        fx = std::move(f_next);
        if (norm_inf(fx) <= tol) {
            trace.termination = Termination::residual;
            return trace;
        }
    }
    throw NoConvergence("newton_run: max_iter reached");
}

}  // namespace pairprox
