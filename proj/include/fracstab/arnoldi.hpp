#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fracstab/common.hpp"

namespace fracstab {

struct ArnoldiOptions {
  /// Number of wanted (largest-magnitude) eigenvalues.
  Eigen::Index nev = 1;
  /// Subspace dimension, nev < ncv <= n unless ncv == n.
  Eigen::Index ncv = 0;
  int max_restarts = 300;
  /// Ritz residual tolerance relative to max(|theta|, eps * ||H||).
  double tol = 1e-13;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct ArnoldiResult {
  /// Wanted Ritz values, largest magnitude first.
  std::vector<Complex> values;
  int restarts = 0;
  int operator_applications = 0;
};

using LinearOperator = std::function<Vector(const Vector&)>;

/// Implicitly restarted Arnoldi with exact shifts for the `nev` dominant
/// eigenvalues of a linear operator on C^n. Invariant subspaces found before
/// ncv steps are continued with a fresh orthogonal direction.
ArnoldiResult arnoldi_dominant(const LinearOperator& op, Eigen::Index n,
                               const ArnoldiOptions& options);

}  // namespace fracstab
