#include "pairprox/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pairprox/errors.hpp"
#include "sampling.hpp"

namespace pairprox {
namespace {

void require_dim(std::size_t expected, const Vec& x, const char* op) {
    if (x.size() != expected) {
        throw DimensionMismatch(std::string(op) + ": expected dimension " + std::to_string(expected) +
                                ", got " + std::to_string(x.size()));
    }
}

double sign_or_zero(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

AffineOperator::AffineOperator(Mat a_in, Vec b_in) : a(std::move(a_in)), b(std::move(b_in)) {
    if (!a.is_square() || a.rows() != b.size()) {
        throw DimensionMismatch("AffineOperator: A must be n x n with b of length n");
    }
}

NonlinearOperator::NonlinearOperator(std::string name, std::size_t dimension, Evaluator evaluator,
                                     std::optional<JacobianFn> jacobian,
                                     std::optional<double> lipschitz_hint)
    : name_(std::move(name)),
      dimension_(dimension),
      evaluator_(std::move(evaluator)),
      jacobian_(std::move(jacobian)),
      lipschitz_hint_(lipschitz_hint) {
    if (!evaluator_) throw PreconditionError("NonlinearOperator: empty evaluator");
    if (lipschitz_hint_ && !(*lipschitz_hint_ > 0.0)) {
        throw PreconditionError("NonlinearOperator: lipschitz hint must be positive");
    }
    if (!jacobian_) return;

    detail::Rng rng(20240917);
    const Vec lower(dimension_, -1.0);
    const Vec upper(dimension_, 1.0);
    const Operator self = *this;
    for (int k = 0; k < 20; ++k) {
        const Vec x = detail::uniform_in_box(rng, lower, upper);
        const Mat analytic = analytic_jacobian(x);
        const Mat fd = jacobian_fd(self, x);
        if (norm_max(analytic - fd) > 1e-4 * std::max(1.0, norm_max(analytic))) {
            throw PreconditionError("NonlinearOperator '" + name_ +
                                    "': analytic Jacobian disagrees with finite differences");
        }
    }
}

Vec NonlinearOperator::operator()(const Vec& x) const {
    require_dim(dimension_, x, "NonlinearOperator");
    Vec y = evaluator_(x);
    if (y.size() != dimension_) throw DimensionMismatch("NonlinearOperator: evaluator output size");
    if (!y.all_finite()) throw NonFinite("NonlinearOperator '" + name_ + "': non-finite value");
    return y;
}

Mat NonlinearOperator::analytic_jacobian(const Vec& x) const {
    if (!jacobian_) throw PreconditionError("NonlinearOperator: no analytic Jacobian");
    require_dim(dimension_, x, "NonlinearOperator::jacobian");
    Mat j = (*jacobian_)(x);
    if (j.rows() != dimension_ || j.cols() != dimension_) {
        throw DimensionMismatch("NonlinearOperator: Jacobian shape");
    }
    if (!j.all_finite()) throw NonFinite("NonlinearOperator: non-finite Jacobian");
    return j;
}

std::size_t dimension(const Operator& f) {
    return std::visit([](const auto& op) { return op.dimension(); }, f);
}

Vec eval(const Operator& f, const Vec& x) {
    if (const auto* aff = std::get_if<AffineOperator>(&f)) {
        require_dim(aff->dimension(), x, "eval");
        Vec y = aff->a * x - aff->b;
        if (!y.all_finite()) throw NonFinite("eval: non-finite affine value");
        return y;
    }
    return std::get<NonlinearOperator>(f)(x);
}

Mat jacobian_fd(const Operator& f, const Vec& x) {
    const std::size_t n = dimension(f);
    require_dim(n, x, "jacobian_fd");
    const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    Mat j(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const double h = root_eps * std::max(1.0, std::abs(x[c]));
        Vec xp = x;
        Vec xm = x;
        xp[c] += h;
        xm[c] -= h;
        const Vec diff = eval(f, xp) - eval(f, xm);
        const double width = xp[c] - xm[c];
        for (std::size_t r = 0; r < n; ++r) j(r, c) = diff[r] / width;
    }
    return j;
}

Mat jacobian(const Operator& f, const Vec& x) {
    if (const auto* aff = std::get_if<AffineOperator>(&f)) return aff->a;
    const auto& nl = std::get<NonlinearOperator>(f);
    return nl.has_jacobian() ? nl.analytic_jacobian(x) : jacobian_fd(f, x);
}

double estimate_lipschitz(const Operator& f, const Vec& lower, const Vec& upper, std::size_t samples,
                          std::uint64_t seed) {
    if (const auto* aff = std::get_if<AffineOperator>(&f)) return norm2(aff->a);
    const auto& nl = std::get<NonlinearOperator>(f);
    if (nl.lipschitz_hint()) return *nl.lipschitz_hint();
    require_dim(nl.dimension(), lower, "estimate_lipschitz");
    require_dim(nl.dimension(), upper, "estimate_lipschitz");
    detail::Rng rng(seed);
    double best = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        best = std::max(best, norm2(jacobian_fd(f, detail::uniform_in_box(rng, lower, upper))));
    }
    return best;
}

const char* to_string(KernelProvenance p) noexcept {
    switch (p) {
        case KernelProvenance::user: return "user";
        case KernelProvenance::perturbation: return "perturbation";
        case KernelProvenance::symmetric: return "symmetric";
        case KernelProvenance::factored: return "factored";
        case KernelProvenance::identity: return "identity";
    }
    return "unknown";
}

std::optional<KernelProvenance> provenance_from_string(const std::string& s) {
    for (auto p : {KernelProvenance::user, KernelProvenance::perturbation, KernelProvenance::symmetric,
                   KernelProvenance::factored, KernelProvenance::identity}) {
        if (s == to_string(p)) return p;
    }
    return std::nullopt;
}

KernelSpec KernelSpec::identity(std::size_t n) {
    return KernelSpec{Mat::identity(n), KernelProvenance::identity, 0.0, 1.0};
}

KernelSpec KernelSpec::user(Mat b) {
    if (!b.is_square()) throw DimensionMismatch("KernelSpec: B must be square");
    return KernelSpec{std::move(b), KernelProvenance::user, 0.0, 1.0};
}

AffineOperator example1_operator() {
    return AffineOperator(Mat{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, Vec{14, 32, 50});
}

NonlinearOperator example2_operator() {
    // f(x) = diag(-1, 5, 9) x + g(x)
    auto f = [](const Vec& x) {
        const double a3 = std::abs(x[2]);
        return Vec{-x[0] + 2.0 * std::sin(a3 + x[1]),
                   5.0 * x[1] + std::cos(std::abs(x[0]) - x[1]),
                   9.0 * x[2] + 2.0 * std::cos(x[1]) - 3.0 * std::sin(a3)};
    };
    // |.| contributes sign(.) off the kinks; sign(0) = 0 on them.
    auto jac = [](const Vec& x) {
        const double a3 = std::abs(x[2]);
        const double s1 = sign_or_zero(x[0]);
        const double s3 = sign_or_zero(x[2]);
        const double c1 = 2.0 * std::cos(a3 + x[1]);
        const double s2 = std::sin(std::abs(x[0]) - x[1]);
        return Mat{{-1.0, c1, c1 * s3},
                   {-s2 * s1, 5.0 + s2, 0.0},
                   {0.0, -2.0 * std::sin(x[1]), 9.0 - 3.0 * std::cos(a3) * s3}};
    };
    return NonlinearOperator("example2", 3, f, jac);
}

Operator builtin_operator(const std::string& name) {
    if (name == "example1") return example1_operator();
    if (name == "example2") return example2_operator();
    throw PreconditionError("unknown builtin operator '" + name + "'");
}

}  // namespace pairprox
