#include "pairprox/pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pairprox/errors.hpp"
#include "sampling.hpp"

namespace pairprox {

const char* to_string(PairStatus s) noexcept {
    switch (s) {
        case PairStatus::monotone: return "monotone";
        case PairStatus::strongly_monotone: return "strongly_monotone";
        case PairStatus::not_monotone: return "not_monotone";
        case PairStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

const char* to_string(CertificateMethod m) noexcept {
    return m == CertificateMethod::psd_exact ? "psd_exact" : "sampled";
}

PairCertificate certify_linear_pair(const Mat& a, const Mat& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw DimensionMismatch("certify_linear_pair: A and B must be square of equal size");
    }
    const Mat atb = a.transpose() * b;
    const EigDecomp eig = sym_eig(sym_part(atb));
    const std::size_t last = eig.eigenvalues.size() - 1;

    PairCertificate cert;
    cert.method = CertificateMethod::psd_exact;
    cert.scale = norm_max(atb);
    cert.lambda_min = eig.eigenvalues[last];
    const double tol = std::max(kPairTolRel * cert.scale, kAbsFloor);
    if (cert.lambda_min > tol) {
        cert.status = PairStatus::strongly_monotone;
        cert.beta = cert.lambda_min;
    } else if (cert.lambda_min >= -tol) {
        cert.status = PairStatus::monotone;
    } else {
        cert.status = PairStatus::not_monotone;
        Vec z = eig.eigenvectors.col(last);
        cert.witness = (1.0 / norm2(z)) * z;
    }
    return cert;
}

double zero_threshold(const Vec& spectrum) {
    double m = 0.0;
    for (double d : spectrum.values()) m = std::max(m, std::abs(d));
    return 1e-10 * std::max(1.0, m);
}

KernelSpec construct_kernel_perturbation(const Mat& a, const Mat& a1, CheckMode mode) {
    if (!a.is_square() || !a1.is_square() || a.rows() != a1.rows()) {
        throw DimensionMismatch("construct_kernel_perturbation: A and A1 must be square of equal size");
    }
    if (mode == CheckMode::checked) {
        // sym(A1ᵀA) PSD is exactly the pair test on (A1, A)
        const PairCertificate hyp = certify_linear_pair(a1, a);
        if (!hyp.is_monotone()) {
            const Vec& z = *hyp.witness;
            throw HypothesisViolated("construct_kernel_perturbation: A1^T A is not monotone",
                                     z.to_vector(), dot(z, a1.transpose() * (a * z)));
        }
    }
    return KernelSpec{a + a1, KernelProvenance::perturbation, 0.0, 1.0};
}

KernelSpec construct_kernel_symmetric(const Mat& a, double replacement) {
    if (!std::isfinite(replacement)) throw PreconditionError("replacement value must be finite");
    const EigDecomp eig = sym_eig(a);
    const double tau = zero_threshold(eig.eigenvalues);
    Vec d = eig.eigenvalues;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (std::abs(d[i]) <= tau) d[i] = replacement;
    const Mat& o = eig.eigenvectors;
    Mat b = o * Mat::diagonal(d) * o.transpose();
    return KernelSpec{sym_part(b), KernelProvenance::symmetric, tau, replacement};
}

KernelSpec construct_kernel_factored(const Mat& a, double replacement) {
    if (!a.is_square()) throw DimensionMismatch("construct_kernel_factored: A must be square");
    if (!std::isfinite(replacement)) throw PreconditionError("replacement value must be finite");
    const SvdDecomp s = svd(a);
    const double tau = zero_threshold(s.sigma);
    Vec d = s.sigma;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] <= tau) d[i] = replacement;
    Mat b = s.u * Mat::diagonal(d) * s.vt;
    return KernelSpec{std::move(b), KernelProvenance::factored, tau, replacement};
}

PairCertificate certify_nonlinear_pair_sampled(const Operator& f, const KernelSpec& v, const Vec& lower,
                                               const Vec& upper, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = dimension(f);
    if (lower.size() != n || upper.size() != n || v.dimension() != n) {
        throw DimensionMismatch("certify_nonlinear_pair_sampled: dimensions differ");
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!(lower[i] < upper[i])) throw PreconditionError("certify_nonlinear_pair_sampled: empty box");

    detail::Rng rng(seed);
    PairCertificate cert;
    cert.method = CertificateMethod::sampled;
    cert.status = PairStatus::inconclusive;
    cert.lambda_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
        const Vec x = detail::uniform_in_box(rng, lower, upper);
        const Vec y = detail::uniform_in_box(rng, lower, upper);
        const Vec d = x - y;
        const double dd = dot(d, d);
        if (dd == 0.0) continue;
        const double ip = dot(eval(f, x) - eval(f, y), v.apply(d));
        cert.lambda_min = std::min(cert.lambda_min, ip / dd);
        if (ip < -kSampledViolation) {
            cert.status = PairStatus::not_monotone;
            cert.sample = std::make_pair(x, y);
            return cert;
        }
    }
    return cert;
}

LocalStrongMonotonicityEstimate estimate_local_strong_monotonicity(const Operator& f, const Vec& center,
                                                                   double radius, std::size_t samples,
                                                                   std::uint64_t seed) {
    if (center.size() != dimension(f)) throw DimensionMismatch("estimate_local_strong_monotonicity");
    if (!(radius > 0.0)) throw PreconditionError("estimate_local_strong_monotonicity: radius must be > 0");

    LocalStrongMonotonicityEstimate est;
    est.center = center;
    est.radius = radius;
    est.samples = samples;
    est.jacobian = jacobian(f, center);
    try {
        (void)LuFactor(est.jacobian);
    } catch (const SingularMatrix&) {
        throw SingularJacobian("estimate_local_strong_monotonicity: f'(center) is singular", 0);
    }
    const SvdDecomp s = svd(est.jacobian);
    est.c = s.sigma[s.sigma.size() - 1];
    est.theoretical_floor = 0.5 * est.c * est.c;

    detail::Rng rng(seed);
    est.alpha_hat = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
        const Vec x = detail::uniform_in_ball(rng, center, radius);
        const Vec y = detail::uniform_in_ball(rng, center, radius);
        const Vec d = x - y;
        const double dd = dot(d, d);
        if (dd == 0.0) continue;
        est.alpha_hat = std::min(est.alpha_hat, dot(eval(f, x) - eval(f, y), est.jacobian * d) / dd);
    }
    return est;
}

}  // namespace pairprox
