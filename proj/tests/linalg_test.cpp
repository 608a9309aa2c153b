#include "momenta/linalg.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "momenta/campaign.hpp"
#include "support/fixtures.hpp"

namespace momenta {
namespace {

using testing::diag;
using testing::example_matrix;
using testing::real_matrix;

double reconstruction_error(const ComplexMatrix& a, const Spectrum& s) {
  const ComplexMatrix rebuilt = s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
  return (rebuilt - a).norm();
}

TEST(HermitianEig, ExampleMatrixHasSpectrumMinus12Zero12) {
  const auto s = hermitian_eig(example_matrix());
  ASSERT_EQ(s.size(), 3);
  EXPECT_NEAR(s.eigenvalues(0), -12.0, 1e-10);
  EXPECT_NEAR(s.eigenvalues(1), 0.0, 1e-10);
  EXPECT_NEAR(s.eigenvalues(2), 12.0, 1e-10);
}

TEST(HermitianEig, IdentityAndSwap) {
  const auto id = hermitian_eig(ComplexMatrix::Identity(4, 4));
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(id.eigenvalues(i), 1.0);
  EXPECT_EQ(id.sweeps, 0);

  const auto swap = hermitian_eig(real_matrix({{0, 1}, {1, 0}}));
  EXPECT_NEAR(swap.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(swap.eigenvalues(1), 1.0, 1e-15);
}

TEST(HermitianEig, ComplexTwoByTwo) {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
  ComplexMatrix a(2, 2);
  a << 2, Complex(0, 1), Complex(0, -1), 2;
  const auto s = hermitian_eig(a);
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 3.0, 1e-14);
  EXPECT_LE(reconstruction_error(a, s), 1e-14);
}

TEST(HermitianEig, RandomMatricesReconstructAndMatchReferenceSolver) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 12);
    ComplexMatrix z = random_unitary(n, seed + 1000) * random_hermitian(n, seed, -5, 5);
    const ComplexMatrix a = (z + z.adjoint()) / 2.0;  // not diagonal in any convenient basis
    const auto s = hermitian_eig(a);
    EXPECT_LE(reconstruction_error(a, s), 1e-10 * std::max(1.0, a.norm())) << "seed " << seed;
    EXPECT_LE((s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(s.eigenvalues(i - 1), s.eigenvalues(i));
    EXPECT_LE((s.eigenvalues - testing::reference_eigenvalues(a)).cwiseAbs().maxCoeff(), 1e-11 * a.norm());
  }
}

TEST(HermitianEig, RepeatedEigenvalues) {
  RealVector lambda(5);
  lambda << 2, 2, 2, -1, -1;
  const ComplexMatrix a = with_spectrum(lambda, 9);
  const auto s = hermitian_eig(a);
  EXPECT_NEAR(s.eigenvalues(0), -1, 1e-12);
  EXPECT_NEAR(s.eigenvalues(1), -1, 1e-12);
  EXPECT_NEAR(s.eigenvalues(4), 2, 1e-12);
  EXPECT_LE(reconstruction_error(a, s), 1e-12);
}

TEST(HermitianEig, FloatInstantiation) {
  const Eigen::MatrixXcf a = example_matrix().cast<std::complex<float>>();
  const auto s = hermitian_eig(a);
  EXPECT_NEAR(s.eigenvalues(0), -12.0f, 1e-4f);
  EXPECT_NEAR(s.eigenvalues(2), 12.0f, 1e-4f);
}

TEST(HermitianEig, Errors) {
  EXPECT_THROW(hermitian_eig(ComplexMatrix::Zero(2, 3)), DimensionError);
  ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
  nan(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(hermitian_eig(nan), DomainError);
  EXPECT_THROW(hermitian_eig(real_matrix({{1, 2}, {0, 1}})), DomainError);
}

TEST(Hermitize, AcceptsRoundingAsymmetryAndRejectsRealAsymmetry) {
  ComplexMatrix a = real_matrix({{1, 2}, {2, 1}});
  a(0, 1) += 1e-12;
  const ComplexMatrix h = hermitize(a);
  EXPECT_EQ(h, h.adjoint());
  a(0, 1) += 1e-3;
  EXPECT_THROW(hermitize(a), DomainError);
}

TEST(IsPsd, Examples) {
  const auto id = is_psd(ComplexMatrix::Identity(3, 3));
  EXPECT_TRUE(id.passed);
  EXPECT_NEAR(id.min_eigenvalue, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(id.tolerance_used, 1e-9);

  const auto indefinite = is_psd(real_matrix({{1, 2}, {2, 1}}));
  EXPECT_FALSE(indefinite.passed);
  EXPECT_NEAR(indefinite.min_eigenvalue, -1.0, 1e-14);

  // Variance block of diag(1,2) under the normalized trace; λ_min = (3.5 - √11.25)/2.
  const auto kadison = is_psd(real_matrix({{1, 1.5}, {1.5, 2.5}}));
  EXPECT_TRUE(kadison.passed);
  EXPECT_NEAR(kadison.min_eigenvalue, (3.5 - std::sqrt(11.25)) / 2.0, 1e-14);
  EXPECT_NEAR(kadison.min_eigenvalue, 0.0729490, 1e-7);
}

TEST(IsPsd, ScaleFloorsAtOneAndToleranceIsRelative) {
  const auto tiny = is_psd(diag({1e-3, -1e-10}));
  EXPECT_DOUBLE_EQ(tiny.scale, 1.0);
  EXPECT_TRUE(tiny.passed);  // -1e-10 ≥ -1e-9
  EXPECT_FALSE(is_psd(diag({1e-3, -1e-8})).passed);

  const auto big = is_psd(diag({1e6, -1e-4}));
  EXPECT_NEAR(big.scale, 1e6, 1e-6);
  EXPECT_TRUE(big.passed);  // -1e-4 ≥ -1e-9·1e6
  EXPECT_THROW(is_psd(diag({1, 1}), 0.0), DomainError);
  EXPECT_THROW(is_psd(real_matrix({{1, 5}, {0, 1}})), DomainError);
}

TEST(IsPsd, GramMatricesPass) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 7);
    ComplexMatrix c = random_unitary(n, seed) * random_hermitian(n, seed + 5);
    EXPECT_TRUE(is_psd(ComplexMatrix(c.adjoint() * c)).passed) << seed;
  }
}

TEST(Kron, Examples) {
  const ComplexMatrix b = real_matrix({{1, 2}, {3, 4}});
  ComplexMatrix block_diag = ComplexMatrix::Zero(4, 4);
  block_diag.topLeftCorner(2, 2) = b;
  block_diag.bottomRightCorner(2, 2) = b;
  EXPECT_EQ(kron(ComplexMatrix::Identity(2, 2), b), block_diag);
  EXPECT_EQ(kron(real_matrix({{2}}), b), ComplexMatrix(2.0 * b));

  const ComplexMatrix k = kron(real_matrix({{1, 1}, {1, 1}}), ComplexMatrix::Identity(2, 2));
  ComplexMatrix expected(4, 4);
  expected << 1, 0, 1, 0,  //
      0, 1, 0, 1,          //
      1, 0, 1, 0,          //
      0, 1, 0, 1;
  EXPECT_EQ(k, expected);
}

TEST(Kron, IndexingAndCap) {
  const ComplexMatrix a = random_unitary(3, 1);
  const ComplexMatrix b = random_unitary(2, 2).leftCols(1);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 2; ++p) EXPECT_EQ(k(i * 2 + p, j), a(i, j) * b(p, 0));

  EXPECT_THROW(kron(ComplexMatrix::Identity(65, 65), ComplexMatrix::Identity(64, 64)), DimensionError);
  EXPECT_THROW(kron(ComplexMatrix::Identity(5, 5), ComplexMatrix::Identity(5, 5), 20), DimensionError);
}

TEST(Kron, PsdTimesPsdIsPsd) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ComplexMatrix p = random_hermitian(3, seed, 0, 2);
    const ComplexMatrix q = random_hermitian(2 + seed % 3, seed + 100, 0, 2);
    EXPECT_TRUE(is_psd(kron(p, q)).passed) << seed;
  }
}

TEST(Hadamard, Examples) {
  const ComplexMatrix a = random_hermitian(3, 4);
  EXPECT_EQ(hadamard(a, ComplexMatrix::Ones(3, 3)), a);
  EXPECT_EQ(hadamard(a, ComplexMatrix::Identity(3, 3)), ComplexMatrix(a.diagonal().asDiagonal()));
  EXPECT_EQ(hadamard(real_matrix({{1, 2}, {2, 4}}), real_matrix({{1, -1}, {-1, 1}})),
            real_matrix({{1, -2}, {-2, 4}}));
  EXPECT_THROW(hadamard(a, ComplexMatrix::Ones(2, 3)), DimensionError);
}

TEST(Hadamard, SchurProductTheorem) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
    EXPECT_TRUE(is_psd(hadamard(random_hermitian(n, seed, 0, 3), random_hermitian(n, seed + 50, 0, 3))).passed);
  }
}

TEST(MatrixFunction, LogExamples) {
  using F = ScalarFunction<double>;
  EXPECT_LE(matrix_function(ComplexMatrix::Identity(3, 3), F::log()).norm(), 1e-15);
  const ComplexMatrix l = matrix_function(diag({1.0, std::numbers::e}), F::log());
  EXPECT_LE((l - diag({0.0, 1.0})).norm(), 1e-15);
}

TEST(MatrixFunction, SquareOfExampleHasTrace288) {
  const ComplexMatrix sq = matrix_function(example_matrix(), ScalarFunction<double>::power(2));
  EXPECT_NEAR(sq.trace().real(), 288.0, 1e-9);
  EXPECT_LE((sq - example_matrix() * example_matrix()).norm(), 1e-10 * 288);
}

TEST(MatrixFunction, DomainErrors) {
  using F = ScalarFunction<double>;
  EXPECT_THROW(matrix_function(diag({0.0, 1.0}), F::log()), DomainError);
  EXPECT_THROW(matrix_function(diag({-1.0, 1.0}), F::power(-1)), DomainError);
  EXPECT_NO_THROW(matrix_function(diag({-1.0, 1.0}), F::power(3)));
}

TEST(MatrixFunction, AffineCombination) {
  // f(x) = 2x - x log x on diag(1, e, e²)
  using F = ScalarFunction<double>;
  const double e = std::numbers::e;
  const auto f = F::combination({{2.0, 1, false}, {-1.0, 1, true}});
  const ComplexMatrix out = matrix_function(diag({1.0, e, e * e}), f);
  EXPECT_LE((out - diag({2.0, e, 0.0})).norm(), 1e-13);
}

TEST(MatrixFunction, PowersAdd) {
  using F = ScalarFunction<double>;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix a = random_hermitian(4, seed);
    const ComplexMatrix pd = random_hermitian(4, seed, 0.5, 2.0);
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q) {
        const ComplexMatrix lhs = matrix_function(a, F::power(p)) * matrix_function(a, F::power(q));
        const ComplexMatrix rhs = matrix_function(a, F::power(p + q));
        EXPECT_LE((lhs - rhs).norm(), 1e-9 * std::max(1.0, rhs.norm()));
      }
    for (int p = -2; p <= 2; ++p)
      for (int q = -2; q <= 2; ++q) {
        const ComplexMatrix lhs = matrix_function(pd, F::power(p)) * matrix_function(pd, F::power(q));
        const ComplexMatrix rhs = matrix_function(pd, F::power(p + q));
        EXPECT_LE((lhs - rhs).norm(), 1e-9 * std::max(1.0, rhs.norm()));
      }
  }
}

TEST(RandomUnitary, Examples) {
  const ComplexMatrix one = random_unitary(1, 3);
  EXPECT_NEAR(std::abs(one(0, 0)), 1.0, 1e-15);

  const ComplexMatrix u = random_unitary(4, 42);
  EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
  EXPECT_EQ(u, random_unitary(4, 42));
  EXPECT_NE(u, random_unitary(4, 43));
  EXPECT_THROW(random_unitary(0, 1), DimensionError);
}

TEST(RandomUnitary, LargerSizesStayUnitary) {
  for (Eigen::Index n : {8, 20, 50}) {
    const ComplexMatrix u = random_unitary(n, static_cast<std::uint64_t>(n));
    EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm(), 1e-12) << n;
  }
}

}  // namespace
}  // namespace momenta
