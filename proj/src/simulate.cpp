#include "fracstab/simulate.hpp"

#include <cmath>

#include "fracstab/common.hpp"

namespace fracstab {

Trajectory simulate(const Eigen::MatrixXd& A, std::span<const double> alpha,
                    std::span<const double> x0, double T, double h) {
  const auto d = static_cast<Eigen::Index>(alpha.size());
  if (d == 0) throw InputError("simulate: empty order vector");
  if (A.rows() != d || A.cols() != d || static_cast<Eigen::Index>(x0.size()) != d) {
    throw InputError("simulate: A, alpha and x0 must have matching dimensions");
  }
  if (!(h > 0.0) || !(T >= h) || !std::isfinite(T)) {
    throw InputError("simulate: step and horizon must satisfy 0 < h <= T");
  }
  for (const double a : alpha) {
    if (!(a > 0.0 && a <= 1.0)) throw InputError("simulate: orders must lie in (0, 1]");
  }

  const auto steps = static_cast<Eigen::Index>(std::llround(std::floor(T / h + 1e-9)));
  Trajectory traj;
  traj.h = h;
  traj.T = T;
  traj.t.resize(static_cast<std::size_t>(steps + 1));
  for (Eigen::Index n = 0; n <= steps; ++n) traj.t[static_cast<std::size_t>(n)] = static_cast<double>(n) * h;

  // Per-component scale h^a / Gamma(a + 2) and convolution weights
  // w[m] = (m+1)^(a+1) - 2 m^(a+1) + (m-1)^(a+1), m >= 1.
  Eigen::VectorXd scale(d);
  Eigen::MatrixXd w(steps + 1, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double a = alpha[static_cast<std::size_t>(k)];
    scale(k) = std::pow(h, a) / std::tgamma(a + 2.0);
    w(0, k) = 0.0;
    for (Eigen::Index m = 1; m <= steps; ++m) {
      const auto md = static_cast<double>(m);
      w(m, k) = std::pow(md + 1.0, a + 1.0) - 2.0 * std::pow(md, a + 1.0) + std::pow(md - 1.0, a + 1.0);
    }
  }

  const Eigen::VectorXd start = Eigen::Map<const Eigen::VectorXd>(x0.data(), d);
  traj.x.resize(steps + 1, d);
  traj.x.row(0) = start.transpose();
  Eigen::MatrixXd f(steps + 1, d);
  f.row(0) = (A * start).transpose();

  const Eigen::MatrixXd step_matrix = Eigen::MatrixXd::Identity(d, d) - scale.asDiagonal() * A;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(step_matrix);
  if (!lu.isInvertible()) throw SolverError("simulate: singular step system I - diag(c) A at step 1");

  for (Eigen::Index n = 1; n <= steps; ++n) {
    Eigen::VectorXd rhs(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double a = alpha[static_cast<std::size_t>(k)];
      const auto nd = static_cast<double>(n);
      // Weight of f_0: (n-1)^(a+1) - (n-1-a) n^a.
      double acc = (std::pow(nd - 1.0, a + 1.0) - (nd - 1.0 - a) * std::pow(nd, a)) * f(0, k);
      for (Eigen::Index j = 1; j < n; ++j) acc += w(n - j, k) * f(j, k);
      rhs(k) = start(k) + scale(k) * acc;
    }
    const Eigen::VectorXd xn = lu.solve(rhs);
    traj.x.row(n) = xn.transpose();
    f.row(n) = (A * xn).transpose();
  }
  return traj;
}

}  // namespace fracstab
