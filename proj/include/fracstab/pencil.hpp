#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "fracstab/common.hpp"
#include "fracstab/orders.hpp"

namespace fracstab {

/// Compressed-row sparse storage used for the companion pencil.
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, int>;

/// p(mu) = sum_j B_j mu^j with B_0 = -A and B_j (j >= 1) the 0/1 diagonal
/// selector of the components with q_k = j.
struct MatrixPolynomial {
  std::size_t d = 0;
  std::int64_t sigma = 0;
  std::int64_t N = 0;
  std::vector<std::int64_t> q;
  /// B[0] .. B[sigma], each d x d.
  std::vector<Matrix> B;
};

/// Block companion linearization mu X v = Y v of a MatrixPolynomial:
///
///   X = blockdiag(B_sigma, I_{(sigma-1)d})
///
///       [ -B_{sigma-1}  -B_{sigma-2}  ...  -B_0 ]
///   Y = [  I_d           0            ...   0   ]
///       [        ...          ...           ... ]
///       [  0            ...           I_d   0   ]
struct Pencil {
  SparseMatrix X;
  SparseMatrix Y;
  std::size_t d = 0;
  std::int64_t sigma = 0;
  std::int64_t N = 0;
  std::vector<std::int64_t> q;

  Eigen::Index size() const { return X.rows(); }
};

MatrixPolynomial build_matrix_polynomial(const NormalizedOrders& orders, const Matrix& A);

Pencil build_pencil(const MatrixPolynomial& mp);

/// Convenience: orders and A straight to the pencil.
Pencil build_pencil(const NormalizedOrders& orders, const Matrix& A);

}  // namespace fracstab
