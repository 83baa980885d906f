#pragma once

// Small dense linear algebra: value-semantic vectors and row-major matrices,
// partial-pivot LU, cyclic Jacobi eigensolver and one-sided Jacobi SVD.
// Sized for the problems this library targets (n of a few dozen at most).

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pairprox {

class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n, double value = 0.0);
    Vec(std::initializer_list<double> values);
    explicit Vec(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    double& operator[](std::size_t i) noexcept { return data_[i]; }
    double operator[](std::size_t i) const noexcept { return data_[i]; }

    [[nodiscard]] std::span<const double> values() const noexcept { return data_; }
    [[nodiscard]] std::span<double> values() noexcept { return data_; }
    [[nodiscard]] const std::vector<double>& to_vector() const noexcept { return data_; }

    [[nodiscard]] bool all_finite() const noexcept;

    static Vec unit(std::size_t n, std::size_t i);

    Vec& operator+=(const Vec& other);
    Vec& operator-=(const Vec& other);
    Vec& operator*=(double s) noexcept;

    friend bool operator==(const Vec&, const Vec&) = default;

private:
    std::vector<double> data_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator-(Vec a);
Vec operator*(double s, Vec a);
Vec operator*(Vec a, double s);

[[nodiscard]] double dot(const Vec& a, const Vec& b);
[[nodiscard]] double norm2(const Vec& a);
[[nodiscard]] double norm_inf(const Vec& a);

class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double value = 0.0);
    /// Row-major nested initializer; rejects ragged rows and non-finite entries.
    Mat(std::initializer_list<std::initializer_list<double>> rows);
    Mat(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    static Mat identity(std::size_t n);
    static Mat diagonal(const Vec& d);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<const double> values() const noexcept { return data_; }
    [[nodiscard]] Vec row(std::size_t i) const;
    [[nodiscard]] Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);

    [[nodiscard]] bool all_finite() const noexcept;
    [[nodiscard]] Mat transpose() const;

    Mat& operator+=(const Mat& other);
    Mat& operator-=(const Mat& other);
    Mat& operator*=(double s) noexcept;

    friend bool operator==(const Mat&, const Mat&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& x);

/// (A + Aᵀ)/2.
[[nodiscard]] Mat sym_part(const Mat& a);
[[nodiscard]] double norm_max(const Mat& a);
[[nodiscard]] double norm_fro(const Mat& a);
/// Spectral norm, the largest singular value.
[[nodiscard]] double norm2(const Mat& a);
/// Determinant by partial-pivot elimination; never throws on singular input.
[[nodiscard]] double det(const Mat& a);

/// Relative pivot threshold below which a matrix is reported singular.
inline constexpr double kSingularPivotRel = 1e-12;
/// Absolute floor applied to every relative tolerance.
inline constexpr double kAbsFloor = 1e-14;

/// LU factorization with partial pivoting, PA = LU.
class LuFactor {
public:
    /// Throws SingularMatrix when a pivot magnitude is <= 1e-12 * ||A||_max.
    explicit LuFactor(const Mat& a);

    [[nodiscard]] Vec solve(const Vec& rhs) const;
    [[nodiscard]] std::size_t size() const noexcept { return lu_.rows(); }
    [[nodiscard]] double determinant() const noexcept;

private:
    Mat lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
};

[[nodiscard]] Vec lu_solve(const Mat& a, const Vec& rhs);

struct EigDecomp {
    Vec eigenvalues;  // descending
    Mat eigenvectors; // column k pairs with eigenvalues[k]
};

struct SvdDecomp {
    Mat u;      // m x k, orthonormal columns
    Vec sigma;  // k = min(m, n), descending, nonnegative
    Mat vt;     // k x n, orthonormal rows
};

inline constexpr int kJacobiMaxSweeps = 50;

/// Cyclic Jacobi. Input must be symmetric to 1e-10 relative; it is symmetrized first.
[[nodiscard]] EigDecomp sym_eig(const Mat& a);
/// One-sided (Hestenes) Jacobi SVD.
[[nodiscard]] SvdDecomp svd(const Mat& a);
/// Smallest eigenvalue of (A + Aᵀ)/2.
[[nodiscard]] double min_sym_eigenvalue(const Mat& a);

}  // namespace pairprox
