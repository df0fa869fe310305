#include "fracstab/pencil.hpp"

#include <climits>

namespace fracstab {

MatrixPolynomial build_matrix_polynomial(const NormalizedOrders& orders, const Matrix& A) {
  const auto d = static_cast<Eigen::Index>(orders.dim());
  if (A.rows() != A.cols()) {
    throw InputError("A must be square, got " + std::to_string(A.rows()) + "x" +
                     std::to_string(A.cols()));
  }
  if (A.rows() != d) {
    throw InputError("A is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                     " but the order vector has " + std::to_string(d) + " entries");
  }
  MatrixPolynomial mp;
  mp.d = orders.dim();
  mp.sigma = orders.sigma;
  mp.N = orders.N;
  mp.q = orders.q;
  mp.B.assign(static_cast<std::size_t>(orders.sigma) + 1, Matrix::Zero(d, d));
  mp.B[0] = -A;
  for (Eigen::Index k = 0; k < d; ++k) {
    mp.B[static_cast<std::size_t>(orders.q[k])](k, k) = 1.0;
  }
  return mp;
}

Pencil build_pencil(const MatrixPolynomial& mp) {
  const auto d = static_cast<Eigen::Index>(mp.d);
  const std::int64_t n64 = checked::mul(mp.sigma, static_cast<std::int64_t>(d));
  if (n64 > INT_MAX) throw InputError("pencil dimension sigma*d = " + std::to_string(n64) + " too large");
  const auto n = static_cast<Eigen::Index>(n64);
  const auto sigma = static_cast<Eigen::Index>(mp.sigma);

  using Triplet = Eigen::Triplet<Complex, int>;
  std::vector<Triplet> xs;
  xs.reserve(static_cast<std::size_t>(n));
  const Matrix& lead = mp.B[static_cast<std::size_t>(sigma)];
  for (Eigen::Index k = 0; k < d; ++k) {
    if (lead(k, k) != 0.0) xs.emplace_back(k, k, lead(k, k));
  }
  for (Eigen::Index i = d; i < n; ++i) xs.emplace_back(i, i, 1.0);

  // First block row: block column c holds -B_{sigma-1-c}; the last one is
  // -B_0 = A. The B_j for j >= 1 are diagonal.
  std::vector<Triplet> ys;
  ys.reserve(static_cast<std::size_t>(2 * n + d * d));
  for (Eigen::Index c = 0; c + 1 < sigma; ++c) {
    const Matrix& Bj = mp.B[static_cast<std::size_t>(sigma - 1 - c)];
    for (Eigen::Index k = 0; k < d; ++k) {
      if (Bj(k, k) != 0.0) ys.emplace_back(k, c * d + k, -Bj(k, k));
    }
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Complex v = -mp.B[0](i, j);
      if (v != 0.0) ys.emplace_back(i, (sigma - 1) * d + j, v);
    }
  }
  for (Eigen::Index i = d; i < n; ++i) ys.emplace_back(i, i - d, 1.0);

  Pencil p;
  p.d = mp.d;
  p.sigma = mp.sigma;
  p.N = mp.N;
  p.q = mp.q;
  p.X.resize(n, n);
  p.Y.resize(n, n);
  p.X.setFromTriplets(xs.begin(), xs.end());
  p.Y.setFromTriplets(ys.begin(), ys.end());
  p.X.makeCompressed();
  p.Y.makeCompressed();
  return p;
}

Pencil build_pencil(const NormalizedOrders& orders, const Matrix& A) {
  return build_pencil(build_matrix_polynomial(orders, A));
}

}  // namespace fracstab
