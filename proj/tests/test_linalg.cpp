#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "pairprox/errors.hpp"
#include "pairprox/linalg.hpp"

using namespace pairprox;

namespace {

const Mat kA1{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};

double max_abs_diff(const Mat& a, const Mat& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

Mat random_orthogonal(std::mt19937_64& rng, std::size_t n) {
    // Gram-Schmidt on random columns
    Mat q = oracle::random_mat(rng, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec c = q.col(j);
        for (std::size_t k = 0; k < j; ++k) c -= dot(c, q.col(k)) * q.col(k);
        q.set_col(j, (1.0 / norm2(c)) * c);
    }
    return q;
}

}  // namespace

TEST(Vec, RejectsNonFinite) {
    EXPECT_THROW(Vec({1.0, std::numeric_limits<double>::quiet_NaN()}), NonFinite);
    EXPECT_THROW(Vec(std::vector<double>{std::numeric_limits<double>::infinity()}), NonFinite);
}

TEST(Mat, RejectsRaggedAndNonFinite) {
    EXPECT_THROW((Mat{{1, 2}, {3}}), DimensionMismatch);
    EXPECT_THROW(Mat(2, 2, std::vector<double>{1, 2, 3}), DimensionMismatch);
    EXPECT_THROW((Mat{{1, std::numeric_limits<double>::infinity()}}), NonFinite);
}

TEST(Mat, ShapeMismatchThrows) {
    EXPECT_THROW(Mat(2, 3) * Mat(2, 3), DimensionMismatch);
    EXPECT_THROW(Mat(2, 3) * Vec(2), DimensionMismatch);
    EXPECT_THROW((void)dot(Vec(2), Vec(3)), DimensionMismatch);
}

TEST(LuSolve, IdentitySystem) {
    const Vec x = lu_solve(Mat::identity(3), Vec{14, 32, 50});
    EXPECT_EQ(x, (Vec{14, 32, 50}));
}

TEST(LuSolve, DiagonalSystem) {
    const Vec x = lu_solve(Mat{{2, 0}, {0, 4}}, Vec{2, 8});
    EXPECT_DOUBLE_EQ(x[0], 1.0);
    EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(LuSolve, RankDeficientMatrixIsSingular) {
    EXPECT_THROW((void)lu_solve(kA1, Vec{14, 32, 50}), SingularMatrix);
    EXPECT_THROW((void)lu_solve(kA1, Vec{1, 0, 0}), SingularMatrix);
}

TEST(LuSolve, RandomSystemsMeetResidualBound) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = dim(rng);
        // diagonally boosted so the systems stay well conditioned
        Mat a = oracle::random_mat(rng, n, n) + static_cast<double>(n) * Mat::identity(n);
        const Vec rhs(oracle::random_vector(rng, n, -10, 10));
        const Vec x = lu_solve(a, rhs);
        const double bound = 1e-10 * std::max(1.0, norm_max(a) * norm_inf(x));
        EXPECT_LE(norm_inf(a * x - rhs), bound);
        const auto gj = oracle::gauss_jordan(oracle::dense(a), rhs.to_vector());
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], gj[i], 1e-9 * std::max(1.0, std::abs(gj[i])));
    }
}

TEST(SymEig, DiagonalInput) {
    const auto e = sym_eig(Mat{{3, 0}, {0, 1}});
    EXPECT_DOUBLE_EQ(e.eigenvalues[0], 3.0);
    EXPECT_DOUBLE_EQ(e.eigenvalues[1], 1.0);
    EXPECT_LE(max_abs_diff(e.eigenvectors * e.eigenvectors.transpose(), Mat::identity(2)), 1e-12);
    EXPECT_NEAR(std::abs(e.eigenvectors(0, 0)), 1.0, 1e-12);
}

TEST(SymEig, SwapMatrixSpectrum) {
    const auto e = sym_eig(Mat{{0, 1}, {1, 0}});
    EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues[1], -1.0, 1e-14);
}

TEST(SymEig, GramOfRankDeficientMatrixMatchesCharacteristicPolynomial) {
    const Mat g = sym_part(kA1.transpose() * kA1);
    const auto e = sym_eig(g);
    const auto roots = oracle::sym3_eigenvalues(oracle::dense(g));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.eigenvalues[i], roots[i], 1e-8);
    EXPECT_NEAR(e.eigenvalues[0], 283.8585865803702, 1e-9);
    EXPECT_NEAR(e.eigenvalues[1], 1.1414134196298589, 1e-9);
    EXPECT_NEAR(e.eigenvalues[2], 0.0, 1e-9);
}

TEST(SymEig, RejectsAsymmetricInput) { EXPECT_THROW((void)sym_eig(Mat{{0, 2}, {0, 0}}), NotSymmetric); }

TEST(SymEig, TiesKeepIndexOrder) {
    const auto e = sym_eig(Mat::identity(3));
    EXPECT_EQ(e.eigenvectors, Mat::identity(3));
}

TEST(SymEig, RandomReconstructionAndOrthogonality) {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = dim(rng);
        const Mat m = oracle::random_mat(rng, n, n);
        const Mat a = 5.0 * sym_part(m);
        const auto e = sym_eig(a);
        const Mat& o = e.eigenvectors;
        EXPECT_LE(max_abs_diff(o.transpose() * o, Mat::identity(n)), 1e-10);
        EXPECT_LE(max_abs_diff(o * Mat::diagonal(e.eigenvalues) * o.transpose(), a),
                  1e-8 * std::max(1.0, norm_max(a)));
        for (std::size_t i = 1; i < n; ++i) EXPECT_GE(e.eigenvalues[i - 1], e.eigenvalues[i]);
        if (n == 3) {
            const auto roots = oracle::sym3_eigenvalues(oracle::dense(a));
            for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.eigenvalues[i], roots[i], 1e-8);
        }
    }
}

TEST(Svd, DiagonalInput) {
    const auto s = svd(Mat{{2, 0}, {0, 0}});
    EXPECT_DOUBLE_EQ(s.sigma[0], 2.0);
    EXPECT_DOUBLE_EQ(s.sigma[1], 0.0);
    EXPECT_LE(max_abs_diff(s.u.transpose() * s.u, Mat::identity(2)), 1e-12);
}

TEST(Svd, RankTwoExampleMatrix) {
    // rank oracle: det = 0 and the leading 2x2 minor 1*5 - 2*4 = -3 is nonzero
    EXPECT_EQ(oracle::det3(oracle::dense(kA1)), 0.0);
    const auto s = svd(kA1);
    EXPECT_LE(s.sigma[2], 1e-10);
    EXPECT_GT(s.sigma[1], 0.1);
}

TEST(Svd, OrthogonalHasUnitSingularValues) {
    std::mt19937_64 rng(303);
    const Mat q = random_orthogonal(rng, 5);
    const auto s = svd(q);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(s.sigma[i], 1.0, 1e-12);
}

TEST(Svd, RandomReconstructionIncludingRectangularAndRankDeficient) {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = dim(rng), n = dim(rng);
        Mat a = 3.0 * oracle::random_mat(rng, m, n);
        if (t % 3 == 0 && m > 1) {
            // duplicate a row to force rank deficiency
            for (std::size_t j = 0; j < n; ++j) a(m - 1, j) = a(0, j);
        }
        const auto s = svd(a);
        const std::size_t k = std::min(m, n);
        ASSERT_EQ(s.sigma.size(), k);
        EXPECT_LE(max_abs_diff(s.u * Mat::diagonal(s.sigma) * s.vt, a), 1e-8 * std::max(1.0, norm_max(a)));
        EXPECT_LE(max_abs_diff(s.u.transpose() * s.u, Mat::identity(k)), 1e-10);
        EXPECT_LE(max_abs_diff(s.vt * s.vt.transpose(), Mat::identity(k)), 1e-10);
        for (std::size_t i = 0; i < k; ++i) {
            EXPECT_GE(s.sigma[i], 0.0);
            if (i) EXPECT_GE(s.sigma[i - 1], s.sigma[i]);
        }
    }
}

TEST(MinSymEigenvalue, Examples) {
    EXPECT_DOUBLE_EQ(min_sym_eigenvalue(Mat::identity(2)), 1.0);
    EXPECT_NEAR(min_sym_eigenvalue(Mat{{0, 2}, {0, 0}}), -1.0, 1e-14);
}

TEST(MinSymEigenvalue, PerturbedKernelPairIsIndefinite) {
    Mat b2 = kA1;
    b2(0, 0) += 1.0;
    const Mat atb = kA1.transpose() * b2;
    EXPECT_LT(min_sym_eigenvalue(atb), 0.0);
    const double q = oracle::quad_form(oracle::dense(atb), {99.99, -200, 100});
    EXPECT_NEAR(q, -0.9933, 1e-3);
    EXPECT_LT(q, 0.0);
}

TEST(MinSymEigenvalue, AgreesWithRandomQuadraticForms) {
    std::mt19937_64 rng(505);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + t % 5;
        const Mat m = oracle::random_mat(rng, n, n);
        // even t: PSD Gram matrix; odd t: shifted to be clearly indefinite
        Mat a = (t % 2 == 0) ? m.transpose() * m : m.transpose() * m - 2.0 * Mat::identity(n);
        const double lmin = min_sym_eigenvalue(a);
        double worst = std::numeric_limits<double>::infinity();
        for (int s = 0; s < 1000; ++s) {
            const auto z = oracle::random_vector(rng, n);
            double zz = 0.0;
            for (double e : z) zz += e * e;
            worst = std::min(worst, oracle::quad_form(oracle::dense(a), z) / zz);
        }
        // sampled Rayleigh quotients never go below the exact minimum
        EXPECT_GE(worst, lmin - 1e-10);
        if (lmin >= 0.0) EXPECT_GE(worst, -1e-8);
        const Vec z_min = sym_eig(sym_part(a)).eigenvectors.col(n - 1);
        EXPECT_NEAR(oracle::quad_form(oracle::dense(a), z_min.to_vector()), lmin, 1e-9);
    }
}

TEST(Det, Examples) {
    EXPECT_NEAR(det(kA1), 0.0, 1e-12);
    Mat m = 0.5 * kA1;
    m(0, 0) += 1.0;
    EXPECT_NEAR(det(m), -0.75, 1e-14);
    EXPECT_NEAR(norm_fro(Mat::identity(3)), std::sqrt(3.0), 1e-15);
}

TEST(Det, CofactorFormulaAcrossStepSizes) {
    for (double g : {0.01, 0.1, 0.127, 0.5, 1.0, 3.0}) {
        Mat m = g * kA1;
        m(0, 0) += 1.0;
        EXPECT_NEAR(oracle::det3(oracle::dense(m)), -3.0 * g * g, 1e-12);
        EXPECT_NEAR(det(m), -3.0 * g * g, 1e-10 * 3.0 * g * g);
    }
}

TEST(Norms, SpectralNormOfExampleMatrix) {
    const auto roots = oracle::sym3_eigenvalues(oracle::dense(kA1.transpose() * kA1));
    EXPECT_NEAR(norm2(kA1), std::sqrt(roots[0]), 1e-10);
}
