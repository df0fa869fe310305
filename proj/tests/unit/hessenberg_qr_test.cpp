#include "fracstab/hessenberg_qr.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "fracstab/verify.hpp"

namespace fracstab {
namespace {

Matrix random_matrix(Eigen::Index n, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix M(n, n);
  for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = scale * Complex(g(rng), g(rng));
  return M;
}

std::vector<Complex> reference_eigenvalues(const Matrix& M) {
  Eigen::ComplexEigenSolver<Matrix> es(M, false);
  const Vector v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

TEST(Balance, PreservesSpectrumAndReducesNorm) {
  Matrix M = random_matrix(12, 3);
  for (Eigen::Index i = 0; i < 12; ++i) {
    M.row(i) *= std::pow(10.0, static_cast<double>(i % 4) - 2.0);
    M.col(i) /= std::pow(10.0, static_cast<double>(i % 4) - 2.0);
  }
  Matrix B = M;
  balance(B);
  EXPECT_LE(B.norm(), M.norm());
  EXPECT_LT(matched_distance(reference_eigenvalues(B), reference_eigenvalues(M)), 1e-10);
}

TEST(HessenbergReduce, StructureAndSimilarity) {
  const Matrix M = random_matrix(15, 5);
  const Matrix H = hessenberg_reduce(M);
  for (Eigen::Index j = 0; j < 15; ++j)
    for (Eigen::Index i = j + 2; i < 15; ++i) EXPECT_EQ(H(i, j), Complex(0.0)) << i << "," << j;
  EXPECT_NEAR(H.norm(), M.norm(), 1e-12 * M.norm());
  EXPECT_NEAR(std::abs(H.trace() - M.trace()), 0.0, 1e-12 * M.norm());
}

TEST(DenseEigenvalues, MatchesIndependentSolver) {
  for (const Eigen::Index n : {1, 2, 5, 17, 40, 90}) {
    const Matrix M = random_matrix(n, 100 + static_cast<std::uint64_t>(n));
    const auto ours = dense_eigenvalues(M);
    ASSERT_EQ(ours.size(), static_cast<std::size_t>(n));
    EXPECT_LT(matched_distance(ours, reference_eigenvalues(M)), 1e-9) << "n=" << n;
  }
}

TEST(DenseEigenvalues, RealMatrixGivesConjugatePairs) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Matrix M(10, 10);
  for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = g(rng);
  const auto ev = dense_eigenvalues(M);
  std::vector<Complex> conj;
  for (const Complex z : ev) conj.push_back(std::conj(z));
  EXPECT_LT(matched_distance(ev, conj), 1e-10);
}

TEST(DenseEigenvalues, TriangularAndZero) {
  Matrix T = Matrix::Zero(4, 4);
  T.diagonal() << 1.0, Complex(0, 2), -3.0, 4.0;
  T(0, 3) = 7.0;
  const auto ev = dense_eigenvalues(T);
  EXPECT_LT(matched_distance(ev, std::vector<Complex>{1.0, Complex(0, 2), -3.0, 4.0}), 1e-14);

  const auto zero = dense_eigenvalues(Matrix::Zero(3, 3));
  for (const Complex z : zero) EXPECT_EQ(z, Complex(0.0));
}

TEST(DenseEigenvalues, CompanionOfKnownRoots) {
  // Roots 1..8 of a monic polynomial; the companion matrix is non-normal.
  const std::vector<Complex> roots = {1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<Complex> c = {1.0};
  for (const Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  const Eigen::Index n = 8;
  Matrix C = Matrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) C(i, n - 1) = -c[static_cast<std::size_t>(i)];
  EXPECT_LT(matched_distance(dense_eigenvalues(C), roots), 1e-8);
}

TEST(DenseEigenvalues, ScaleInvariant) {
  const Matrix M = random_matrix(20, 21);
  const auto a = dense_eigenvalues(M);
  auto b = dense_eigenvalues(1e6 * M);
  for (Complex& z : b) z /= 1e6;
  EXPECT_LT(matched_distance(a, b), 1e-10);
}

}  // namespace
}  // namespace fracstab
