#pragma once

// Test-only reference computations. Deliberately independent of the library:
// plain std::vector storage, Gauss-Jordan with full pivoting, closed forms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "pairprox/linalg.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense dense(const pairprox::Mat& m) {
    Dense d(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
    return d;
}

inline std::vector<double> plain(const pairprox::Vec& v) { return v.to_vector(); }

inline Dense matmul(const Dense& a, const Dense& b) {
    Dense c(a.size(), std::vector<double>(b[0].size(), 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline std::vector<double> matvec(const Dense& a, const std::vector<double>& x) {
    std::vector<double> y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

inline Dense transpose(const Dense& a) {
    Dense t(a[0].size(), std::vector<double>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

/// Gauss-Jordan elimination with full pivoting. Throws on an exactly tiny pivot.
inline std::vector<double> gauss_jordan(Dense a, std::vector<double> b) {
    const std::size_t n = a.size();
    std::vector<std::size_t> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::abs(a[i][j]) > std::abs(a[pr][pc])) pr = i, pc = j;
        if (std::abs(a[pr][pc]) < 1e-300) throw std::runtime_error("oracle: singular");
        std::swap(a[k], a[pr]);
        std::swap(b[k], b[pr]);
        for (auto& row : a) std::swap(row[k], row[pc]);
        std::swap(col[k], col[pc]);
        const double p = a[k][k];
        for (std::size_t j = 0; j < n; ++j) a[k][j] /= p;
        b[k] /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0.0) continue;
            const double f = a[i][k];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[col[k]] = b[k];
    return x;
}

inline double det3(const Dense& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Eigenvalues of a symmetric 3x3 matrix from its characteristic polynomial
/// (trigonometric solution of the depressed cubic), descending.
inline std::array<double, 3> sym3_eigenvalues(const Dense& a) {
    const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) + (a[2][2] - q) * (a[2][2] - q) +
                      2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    if (p == 0.0) return {q, q, q};
    Dense bm = a;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) bm[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
    }
    const double r = std::clamp(det3(bm) / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    return {e1, 3.0 * q - e1 - e3, e3};
}

/// Sum over all ordered index pairs of z_i z_j M_ij: the raw quadratic form.
inline double quad_form(const Dense& m, const std::vector<double>& z) {
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < z.size(); ++j) s += z[i] * m[i][j] * z[j];
    return s;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

inline pairprox::Mat random_mat(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    return pairprox::Mat(r, c, random_vector(rng, r * c));
}

/// Example-2 map written out directly from its formula.
inline std::vector<double> example2_f(const std::vector<double>& x) {
    return {-x[0] + 2.0 * std::sin(std::abs(x[2]) + x[1]), 5.0 * x[1] + std::cos(std::abs(x[0]) - x[1]),
            9.0 * x[2] + 2.0 * std::cos(x[1]) - 3.0 * std::sin(std::abs(x[2]))};
}

/// Damped Newton with forward-difference Jacobian and Gauss-Jordan solves.
inline std::vector<double> newton_root(std::vector<double> (*f)(const std::vector<double>&), std::vector<double> x,
                                       double tol, int max_iter = 200) {
    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double e : v) s = std::max(s, std::abs(e));
        return s;
    };
    for (int it = 0; it < max_iter; ++it) {
        const auto fx = f(x);
        if (norm(fx) <= tol) return x;
        Dense j(x.size(), std::vector<double>(x.size()));
        for (std::size_t c = 0; c < x.size(); ++c) {
            auto xp = x;
            const double h = 1e-7 * std::max(1.0, std::abs(x[c]));
            xp[c] += h;
            const auto fp = f(xp);
            for (std::size_t r = 0; r < x.size(); ++r) j[r][c] = (fp[r] - fx[r]) / h;
        }
        std::vector<double> rhs(fx.size());
        for (std::size_t i = 0; i < fx.size(); ++i) rhs[i] = -fx[i];
        const auto d = gauss_jordan(j, rhs);
        double t = 1.0;
        while (t > 1e-8) {
            std::vector<double> xn(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] + t * d[i];
            if (norm(f(xn)) < norm(fx)) {
                x = xn;
                break;
            }
            t /= 2.0;
        }
        if (t <= 1e-8) return x;
    }
    return x;
}

inline double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace oracle
