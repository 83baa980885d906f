#include "pairprox/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pairprox/csv.hpp"
#include "pairprox/errors.hpp"

namespace pairprox {
namespace {

Vec resolve_reference(const IterateTrace& trace, const std::optional<Vec>& x_star, const char* op) {
    if (x_star) return *x_star;
    if (trace.reference) return *trace.reference;
    throw MissingReference(std::string(op) + ": no reference point x*");
}

double sq(double v) { return v * v; }

}  // namespace

Lemma41Report check_lemma41(const IterateTrace& trace, const KernelSpec& kernel, const Operator& f,
                            std::optional<Vec> x_star) {
    const Vec xs = resolve_reference(trace, x_star, "check_lemma41");
    if (norm_inf(eval(f, xs)) > 1e-8) throw PreconditionError("check_lemma41: x* is not a zero of F");

    const std::vector<Vec> x = trace.iterates();
    const Vec vs = kernel.apply(xs);
    std::vector<double> a;
    std::vector<Vec> vx;
    a.reserve(x.size());
    for (const Vec& xi : x) {
        vx.push_back(kernel.apply(xi));
        a.push_back(sq(norm2(vx.back() - vs)));
    }

    Lemma41Report rep;
    for (std::size_t r = 0; r < trace.records.size(); ++r) {
        const std::size_t n = r + 1;
        const double alpha = trace.records[r].alpha;
        const double lhs = a[n + 1] - a[n] - alpha * (a[n] - a[n - 1]);
        const double rhs = (alpha - 1.0) * sq(norm2(vx[n + 1] - vx[n])) + 2.0 * alpha * sq(norm2(vx[n] - vx[n - 1]));
        const double slack = lhs - rhs;
        rep.slacks.emplace_back(n, slack);
        if (slack > 1e-10 * std::max(1.0, a[n])) rep.violations.emplace_back(n, slack);
    }
    return rep;
}

SummabilityReport check_summability(const IterateTrace& trace, const KernelSpec& kernel) {
    if (trace.records.empty()) throw PreconditionError("check_summability: trace needs at least two iterates");
    const std::vector<Vec> x = trace.iterates();
    SummabilityReport rep;
    double sum = 0.0;
    for (std::size_t n = 1; n < x.size(); ++n) {
        const double d = sq(norm2(kernel.apply(x[n] - x[n - 1])));
        rep.deltas.push_back(d);
        sum += d;
        rep.partial_sums.push_back(sum);
    }
    const std::size_t big_n = rep.deltas.size();
    for (std::size_t n = big_n / 2 + 1; n <= big_n; ++n) rep.tail += rep.deltas[n - 1];
    return rep;
}

ContractionReport check_contraction(const IterateTrace& trace, const KernelSpec& kernel, double beta,
                                    double gamma_inf, std::optional<Vec> x_star) {
    if (!(beta > 0.0)) throw PreconditionError("check_contraction: beta must be > 0 (strongly monotone pair)");
    if (!(gamma_inf > 0.0)) throw PreconditionError("check_contraction: gamma_inf must be > 0");
    const Vec xs = resolve_reference(trace, x_star, "check_contraction");

    ContractionReport rep;
    rep.lipschitz = kernel.lipschitz();
    rep.kappa = 1.0 / (1.0 + beta * gamma_inf / sq(rep.lipschitz));
    for (const auto& r : trace.records) {
        rep.alpha_sup = std::max(rep.alpha_sup, r.alpha);
        const double den = norm2(kernel.apply(r.y - xs));
        if (den <= 1e-14) continue;
        const double ratio = norm2(kernel.apply(r.x_next - xs)) / den;
        rep.ratios.emplace_back(r.n, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    const double k2 = sq(rep.kappa);
    rep.alpha_tilde = 0.5 * (1.0 - k2);
    rep.rho = std::sqrt(k2 * (1.0 + 5.0 * rep.alpha_sup) + rep.alpha_tilde);
    rep.rho_below_one = rep.rho < 1.0;
    return rep;
}

RateFit estimate_linear_rate(const std::vector<double>& series) {
    std::size_t horizon = 0;
    while (horizon < series.size() && std::isfinite(series[horizon]) && series[horizon] > 1e-15) ++horizon;
    if (horizon < 5) {
        throw NonPositive("estimate_linear_rate: fewer than 5 positive entries before the series vanishes");
    }
    RateFit fit;
    fit.window_begin = horizon / 2;
    fit.window_end = horizon;

    const auto m = static_cast<double>(fit.window_end - fit.window_begin);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = fit.window_begin; i < fit.window_end; ++i) {
        sx += static_cast<double>(i);
        sy += std::log(series[i]);
    }
    const double mx = sx / m;
    const double my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = fit.window_begin; i < fit.window_end; ++i) {
        const double dx = static_cast<double>(i) - mx;
        const double dy = std::log(series[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    fit.rho_hat = std::exp(slope);
    const double ss_res = std::max(0.0, syy - slope * sxy);
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

std::vector<double> kernel_error_ratios(const IterateTrace& trace, const Mat& kernel, const Vec& x_star) {
    std::vector<double> ratios;
    for (const auto& r : trace.records) {
        const double den = norm2(kernel * (r.x - x_star));
        if (den <= 1e-14) continue;
        ratios.push_back(norm2(kernel * (r.x_next - x_star)) / den);
    }
    return ratios;
}

double distance_to_solution_set(const Mat& a, const Vec& b, const Vec& x) {
    const SvdDecomp s = svd(a);
    const double cutoff = 1e-10 * std::max(1.0, s.sigma.empty() ? 0.0 : s.sigma[0]);
    const Vec ut_r = s.u.transpose() * (a * x - b);
    Vec scaled(ut_r.size());
    for (std::size_t i = 0; i < ut_r.size(); ++i) scaled[i] = s.sigma[i] > cutoff ? ut_r[i] / s.sigma[i] : 0.0;
    return norm2(s.vt.transpose() * scaled);
}

std::string CertificateReport::to_text() const {
    std::ostringstream out;
    if (lemma41) {
        out << "lemma41_checked_steps: " << lemma41->slacks.size() << '\n';
        out << "lemma41_violations: " << lemma41->violations.size() << '\n';
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& [n, s] : lemma41->slacks) worst = std::max(worst, s);
        if (!lemma41->slacks.empty()) out << "lemma41_max_slack: " << format_double(worst) << '\n';
    }
    if (summability) {
        out << "delta_sum: " << format_double(summability->partial_sums.empty() ? 0.0 : summability->partial_sums.back())
            << '\n';
        out << "delta_tail: " << format_double(summability->tail) << '\n';
    }
    if (contraction) {
        out << "kappa_bound: " << format_double(contraction->kappa) << '\n';
        out << "contraction_max_ratio: " << format_double(contraction->max_ratio) << '\n';
        out << "contraction_ratios: " << contraction->ratios.size() << '\n';
        out << "rho: " << format_double(contraction->rho) << '\n';
        out << "rho_below_one: " << (contraction->rho_below_one ? "true" : "false") << '\n';
    }
    return out.str();
}

std::string CertificateReport::violations_csv() const {
    std::string out = "n,slack\n";
    if (lemma41)
        for (const auto& [n, s] : lemma41->violations) out += std::to_string(n) + ',' + format_double(s) + '\n';
    return out;
}

std::string CertificateReport::ratios_csv() const {
    std::string out = "n,ratio\n";
    if (contraction)
        for (const auto& [n, r] : contraction->ratios) out += std::to_string(n) + ',' + format_double(r) + '\n';
    return out;
}

}  // namespace pairprox
