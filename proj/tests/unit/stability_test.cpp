#include "fracstab/stability.hpp"

#include <numbers>

#include <gtest/gtest.h>

#include "fracstab/eigensolver.hpp"
#include "fracstab/pencil.hpp"
#include "support/test_systems.hpp"

namespace fracstab {
namespace {

constexpr double kPi = std::numbers::pi;

NormalizedOrders half_orders() {
  const std::vector<std::int64_t> r = {1, 1}, s = {1, 2};
  return normalize_orders(validate_order_spec(1.0, r, s));
}

struct Example {
  NormalizedOrders orders;
  Matrix A;
  std::vector<Complex> mu;
};

Example example1(char which) {
  Example e;
  e.orders = normalize_orders(parse_decimal_orders(testing::example1_orders(which)));
  e.A = testing::example1_matrix();
  e.mu = finite_eigenvalues(build_pencil(e.orders, e.A)).mu;
  return e;
}

TEST(Classify, BoundaryAndThirdCategory) {
  const std::vector<Complex> mu = {{0, 1}, {0, -1}, {-1, 0}};
  const Classification c = classify(mu, half_orders(), 1e-10);
  EXPECT_TRUE(c.cat2.empty());
  EXPECT_EQ(c.cat3, (std::vector<std::size_t>{2}));
  EXPECT_TRUE(c.cat4a.empty());
  EXPECT_EQ(c.cat4b, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.total(), 3u);
}

TEST(Classify, ZeroTakesPrecedence) {
  const std::vector<Complex> mu = {{0, 0}, {1e-12, 0}, {1, 0}};
  const Classification c = classify(mu, half_orders(), 1e-10);
  EXPECT_EQ(c.cat2, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.cat4a, (std::vector<std::size_t>{2}));
}

TEST(Classify, NegativeZeroImaginaryPartIsThirdCategory) {
  const std::vector<Complex> mu = {{-2.0, -0.0}};
  const Classification c = classify(mu, half_orders(), 1e-10);
  EXPECT_EQ(c.cat3.size(), 1u);
}

TEST(Classify, Example1aCounts) {
  const Example e = example1('a');
  const Classification c = classify(e.mu, e.orders, default_zero_tolerance(e.orders, e.A));
  EXPECT_EQ(c.cat2.size(), 0u);
  EXPECT_EQ(c.cat3.size(), 74u);
  EXPECT_EQ(c.cat4a.size(), 0u);
  EXPECT_EQ(c.cat4b.size(), 4u);
  for (const auto i : c.cat4b) {
    const double arg = std::abs(principal_arg(e.mu[i])) / kPi;
    EXPECT_TRUE(std::abs(arg - 0.0423) < 1e-3 || std::abs(arg - 0.0432) < 1e-3) << arg;
  }
}

TEST(ZerosOfChi, PrincipalSquare) {
  const std::vector<Complex> mu = {{0, 1}};
  const auto z = zeros_of_chi(mu, half_orders());
  ASSERT_EQ(z.size(), 1u);
  EXPECT_LT(std::abs(z[0] - Complex(-1.0)), 1e-15);
}

TEST(ZerosOfChi, DropsThirdCategory) {
  const std::vector<Complex> mu = {{-1, 0}};
  EXPECT_TRUE(zeros_of_chi(mu, half_orders()).empty());
}

TEST(ZerosOfChi, Example1aValues) {
  const Example e = example1('a');
  const auto z = zeros_of_chi(e.mu, e.orders);
  ASSERT_EQ(z.size(), 4u);
  const std::vector<Complex> expected = {{-0.4364, 0.5828}, {-0.4364, -0.5828}, {-3.0819, 3.7337}, {-3.0819, -3.7337}};
  for (const Complex t : expected) {
    double best = 1.0;
    for (const Complex v : z) best = std::min(best, std::abs(v - t));
    EXPECT_LT(best, 1e-3);
  }
}

TEST(IsSingular, RankTest) {
  EXPECT_TRUE(is_singular(Matrix::Zero(3, 3)));
  Matrix A(2, 2);
  A << 1.0, 2.0, 2.0, 4.0;
  EXPECT_TRUE(is_singular(A));
  EXPECT_FALSE(is_singular(testing::example1_matrix()));
  // Tiny but well conditioned.
  EXPECT_FALSE(is_singular(1e-200 * Matrix::Identity(3, 3)));
}

TEST(Verdict, Example1Rows) {
  const Example a = example1('a');
  const StabilityReport ra = verdict(a.mu, a.A, a.orders);
  EXPECT_TRUE(ra.stable);
  EXPECT_FALSE(ra.a_singular);
  EXPECT_NEAR(ra.min_arg_mu / kPi, 0.0423, 1e-3);
  EXPECT_EQ(ra.cf_zeros.size(), 4u);
  for (const double r : ra.chi_residuals) EXPECT_LE(r, 1e-6);

  const Example d = example1('d');
  const StabilityReport rd = verdict(d.mu, d.A, d.orders);
  EXPECT_FALSE(rd.stable);
  EXPECT_EQ(rd.classification.cat4a.size(), 2u);
}

TEST(Verdict, DiagonalStableCase) {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = -1.0;
  A(1, 1) = -2.0;
  const NormalizedOrders orders = half_orders();
  const auto mu = finite_eigenvalues(build_pencil(orders, A)).mu;
  const StabilityReport r = verdict(mu, A, orders);
  EXPECT_TRUE(r.stable);
  ASSERT_EQ(r.cf_zeros.size(), 2u);
  for (const Complex z : r.cf_zeros) EXPECT_LT(std::abs(z + 1.0), 1e-12);
  EXPECT_EQ(r.boundary_duplicates, 1u);
}

TEST(Verdict, ZeroMatrixIsUnstable) {
  const NormalizedOrders orders = half_orders();
  const Matrix A = Matrix::Zero(2, 2);
  const std::vector<Complex> arbitrary = {{-1, 0}, {-2, 0.1}, {-2, -0.1}};
  for (const double eps : {0.0, 0.5}) {
    VerdictOptions vo;
    vo.epsilon = eps;
    const StabilityReport r = verdict(arbitrary, A, orders, vo);
    EXPECT_FALSE(r.stable);
    EXPECT_TRUE(r.a_singular);
  }
  const auto mu = finite_eigenvalues(build_pencil(orders, A)).mu;
  const StabilityReport r = verdict(mu, A, orders);
  EXPECT_EQ(r.classification.cat2.size(), 3u);
  EXPECT_FALSE(r.stable);
}

TEST(Verdict, EpsilonMonotone) {
  const Example a = example1('a');
  bool seen_unstable = false;
  for (int i = 0; i <= 40; ++i) {
    VerdictOptions vo;
    vo.epsilon = 0.05 * i;
    const bool stable = verdict(a.mu, a.A, a.orders, vo).stable;
    if (seen_unstable) EXPECT_FALSE(stable) << vo.epsilon;
    seen_unstable = seen_unstable || !stable;
  }
  EXPECT_TRUE(seen_unstable);
}

TEST(Verdict, FourthCategoryDecidesWhenNonsingular) {
  const NormalizedOrders orders = half_orders();
  const Matrix A = -Matrix::Identity(2, 2);
  EXPECT_TRUE(verdict(std::vector<Complex>{{-1, 0}, {0, 1}, {0, -1}}, A, orders).stable);
  EXPECT_FALSE(verdict(std::vector<Complex>{{-1, 0}, {1, 0.1}, {1, -0.1}}, A, orders).stable);
}

TEST(DefaultZeroTolerance, Scaling) {
  const NormalizedOrders orders = half_orders();
  EXPECT_DOUBLE_EQ(default_zero_tolerance(orders, Matrix::Zero(2, 2)), 1e-10);
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 3.0;
  EXPECT_DOUBLE_EQ(default_zero_tolerance(orders, A), 2e-10);
}

}  // namespace
}  // namespace fracstab
