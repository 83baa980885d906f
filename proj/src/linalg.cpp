#include "pairprox/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pairprox/errors.hpp"

namespace pairprox {
namespace {

void require_same_size(const Vec& a, const Vec& b, const char* op) {
    if (a.size() != b.size()) {
        throw DimensionMismatch(std::string(op) + ": vector sizes " + std::to_string(a.size()) +
                                " and " + std::to_string(b.size()));
    }
}

void require_same_shape(const Mat& a, const Mat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": matrix shapes differ");
    }
}

void require_finite(const Mat& a, const char* op) {
    if (!a.all_finite()) throw NonFinite(std::string(op) + ": non-finite matrix entry");
}

// Descending order, ties kept in original index order.
std::vector<std::size_t> descending_order(const Vec& values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
    return idx;
}

}  // namespace

// ---------------------------------------------------------------- Vec

Vec::Vec(std::size_t n, double value) : data_(n, value) {}

Vec::Vec(std::initializer_list<double> values) : data_(values) {
    if (!all_finite()) throw NonFinite("Vec: non-finite entry");
}

Vec::Vec(std::vector<double> values) : data_(std::move(values)) {
    if (!all_finite()) throw NonFinite("Vec: non-finite entry");
}

bool Vec::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Vec Vec::unit(std::size_t n, std::size_t i) {
    Vec e(n);
    e[i] = 1.0;
    return e;
}

Vec& Vec::operator+=(const Vec& other) {
    require_same_size(*this, other, "Vec +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& other) {
    require_same_size(*this, other, "Vec -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Vec& Vec::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator-(Vec a) { return a *= -1.0; }
Vec operator*(double s, Vec a) { return a *= s; }
Vec operator*(Vec a, double s) { return a *= s; }

double dot(const Vec& a, const Vec& b) {
    require_same_size(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) {
    // scaled to avoid overflow on large entries
    double scale = norm_inf(a);
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : a.values()) s += (v / scale) * (v / scale);
    return scale * std::sqrt(s);
}

double norm_inf(const Vec& a) {
    double m = 0.0;
    for (double v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

// ---------------------------------------------------------------- Mat

Mat::Mat(std::size_t rows, std::size_t cols, double value)
    : rows_(rows), cols_(cols), data_(rows * cols, value) {}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("Mat: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(*this, "Mat");
}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows_ * cols_) throw DimensionMismatch("Mat: entry count != rows * cols");
    require_finite(*this, "Mat");
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diagonal(const Vec& d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Vec Mat::row(std::size_t i) const {
    Vec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

Vec Mat::col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void Mat::set_col(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw DimensionMismatch("Mat::set_col");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool Mat::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat& Mat::operator+=(const Mat& other) {
    require_same_shape(*this, other, "Mat +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Mat& Mat::operator-=(const Mat& other) {
    require_same_shape(*this, other, "Mat -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Mat& Mat::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("Mat *: inner dimensions differ");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vec operator*(const Mat& a, const Vec& x) {
    if (a.cols() != x.size()) throw DimensionMismatch("Mat * Vec: dimensions differ");
    Vec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Mat sym_part(const Mat& a) {
    if (!a.is_square()) throw DimensionMismatch("sym_part: matrix not square");
    Mat s(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
}

double norm_max(const Mat& a) {
    double m = 0.0;
    for (double v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

double norm_fro(const Mat& a) {
    double s = 0.0;
    for (double v : a.values()) s += v * v;
    return std::sqrt(s);
}

double norm2(const Mat& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    return svd(a).sigma[0];
}

double det(const Mat& a) {
    if (!a.is_square()) throw DimensionMismatch("det: matrix not square");
    require_finite(a, "det");
    const std::size_t n = a.rows();
    Mat m = a;
    double d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            d = -d;
        }
        d *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

// ---------------------------------------------------------------- LU

LuFactor::LuFactor(const Mat& a) : lu_(a), perm_(a.rows()) {
    if (!a.is_square()) throw DimensionMismatch("LuFactor: matrix not square");
    require_finite(a, "LuFactor");
    const std::size_t n = a.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    const double threshold = std::max(kSingularPivotRel * norm_max(a), kAbsFloor);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= threshold) {
            throw SingularMatrix("LuFactor: pivot " + std::to_string(k) + " below threshold");
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
            sign_ = -sign_;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) / lu_(k, k);
            lu_(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

Vec LuFactor::solve(const Vec& rhs) const {
    const std::size_t n = lu_.rows();
    if (rhs.size() != n) throw DimensionMismatch("LuFactor::solve: rhs size");
    if (!rhs.all_finite()) throw NonFinite("LuFactor::solve: non-finite rhs");
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

double LuFactor::determinant() const noexcept {
    double d = sign_;
    for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
}

Vec lu_solve(const Mat& a, const Vec& rhs) { return LuFactor(a).solve(rhs); }

// ---------------------------------------------------------------- eigen / svd

EigDecomp sym_eig(const Mat& a) {
    if (!a.is_square()) throw DimensionMismatch("sym_eig: matrix not square");
    require_finite(a, "sym_eig");
    const std::size_t n = a.rows();
    const double scale = norm_max(a);
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) asym = std::max(asym, std::abs(a(i, j) - a(j, i)));
    if (asym > std::max(1e-10 * scale, kAbsFloor)) {
        throw NotSymmetric("sym_eig: ||A - A^T||_max exceeds 1e-10 * ||A||_max");
    }

    Mat m = sym_part(a);
    Mat v = Mat::identity(n);
    const double off_tol = std::max(1e-12 * norm_fro(m), kAbsFloor);

    auto max_off = [&] {
        double mo = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) mo = std::max(mo, std::abs(m(i, j)));
        return mo;
    };

    int sweep = 0;
    while (max_off() > off_tol) {
        if (sweep++ >= kJacobiMaxSweeps) throw NoConvergence("sym_eig: sweep cap reached");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (apq == 0.0) continue;
                // symmetric Schur 2x2: zero out m(p, q)
                const double tau = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p);
                    const double mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k);
                    const double mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    Vec diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = m(i, i);
    const auto order = descending_order(diag);
    EigDecomp out{Vec(n), Mat(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        out.eigenvectors.set_col(k, v.col(order[k]));
    }
    return out;
}

namespace {

// One-sided Jacobi for m >= n.
SvdDecomp svd_tall(const Mat& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Mat w = a;
    Mat v = Mat::identity(n);
    constexpr double kOrthTol = 1e-15;
    // columns this small are numerical zeros; rotating them only chases rounding noise
    const double tiny = std::pow(1e-14 * norm_fro(a), 2);

    bool rotated = true;
    int sweep = 0;
    while (rotated) {
        if (sweep++ >= kJacobiMaxSweeps) throw NoConvergence("svd: sweep cap reached");
        rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += w(i, p) * w(i, p);
                    beta += w(i, q) * w(i, q);
                    gamma += w(i, p) * w(i, q);
                }
                if (alpha <= tiny || beta <= tiny) continue;
                if (gamma == 0.0 || std::abs(gamma) <= kOrthTol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double wp = w(i, p);
                    const double wq = w(i, q);
                    w(i, p) = c * wp - s * wq;
                    w(i, q) = s * wp + c * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vp = v(i, p);
                    const double vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
    }

    Vec sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(w.col(j));
    const auto order = descending_order(sigma);

    SvdDecomp out{Mat(m, n), Vec(n), Mat(n, n)};
    const double smax = n ? sigma[order[0]] : 0.0;
    const double negligible = std::max(1e-13 * smax, 1e-300);
    std::vector<Vec> basis;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = sigma[j];
        for (std::size_t i = 0; i < n; ++i) out.vt(k, i) = v(i, j);
        Vec u(m);
        if (sigma[j] > negligible) {
            u = (1.0 / sigma[j]) * w.col(j);
        } else {
            // complete U with a unit vector orthogonal to the columns found so far
            double best = -1.0;
            for (std::size_t e = 0; e < m; ++e) {
                Vec cand = Vec::unit(m, e);
                for (int pass = 0; pass < 2; ++pass)
                    for (const Vec& b : basis) cand -= dot(cand, b) * b;
                const double nc = norm2(cand);
                if (nc > best) {
                    best = nc;
                    u = (1.0 / nc) * cand;
                }
            }
        }
        basis.push_back(u);
        out.u.set_col(k, u);
    }
    return out;
}

}  // namespace

SvdDecomp svd(const Mat& a) {
    require_finite(a, "svd");
    if (a.rows() >= a.cols()) return svd_tall(a);
    SvdDecomp t = svd_tall(a.transpose());
    return SvdDecomp{t.vt.transpose(), t.sigma, t.u.transpose()};
}

double min_sym_eigenvalue(const Mat& a) {
    if (!a.is_square()) throw DimensionMismatch("min_sym_eigenvalue: matrix not square");
    const EigDecomp e = sym_eig(sym_part(a));
    return e.eigenvalues.empty() ? 0.0 : e.eigenvalues[e.eigenvalues.size() - 1];
}

}  // namespace pairprox
