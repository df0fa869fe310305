#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fracstab {

/// Solution samples on a uniform grid; row n of x is the state at t[n].
struct Trajectory {
  std::vector<double> t;
  Eigen::MatrixXd x;
  double h = 0.0;
  double T = 0.0;
};

/// Integrates D^alpha x = A x (Caputo, one order per component) with the
/// product-integration trapezoidal rule on t = 0, h, ..., T. The implicit
/// d x d system of each step is solved directly. Requires 0 < h <= T and
/// alpha in (0, 1]^d; d = 1 is accepted.
Trajectory simulate(const Eigen::MatrixXd& A, std::span<const double> alpha,
                    std::span<const double> x0, double T, double h);

}  // namespace fracstab
