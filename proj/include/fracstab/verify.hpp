#pragma once

// Pencil-free oracles: the characteristic function itself, det p(mu), and
// det p as an explicit monic scalar polynomial with a simultaneous
// root-finder.

#include <optional>
#include <span>
#include <vector>

#include "fracstab/common.hpp"
#include "fracstab/orders.hpp"

namespace fracstab {

/// chi(lambda) = det(diag(lambda^alpha) - A), principal-branch powers.
Complex eval_chi(Complex lambda, std::span<const double> alpha, const Matrix& A);

/// det(diag(mu^q_k) - A) with integer powers.
Complex eval_p_det(Complex mu, const NormalizedOrders& orders, const Matrix& A);

struct ScalarPolynomial {
  /// coeffs[i] multiplies mu^i; coeffs.back() == 1.
  std::vector<Complex> coeffs;
  /// |c_N - 1| before the leading coefficient was forced to 1.
  double leading_deviation = 0.0;
  double radius = 1.0;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Complex operator()(Complex mu) const;
};

inline constexpr double kMaxLeadingDeviation = 1e-6;

/// Samples det p on the circle of radius rho at the (N+1)-th roots of unity
/// and recovers the coefficients by an inverse DFT. The default radius is
/// max(1, ||A||_F)^(1/sigma). Throws SolverError when the recovered leading
/// coefficient deviates from 1 by more than kMaxLeadingDeviation.
ScalarPolynomial interpolate_det_p(const NormalizedOrders& orders, const Matrix& A,
                                   std::optional<double> radius = std::nullopt);

struct PolynomialRoots {
  std::vector<Complex> roots;
  /// max |p(root)| / sum |c_i| |root|^i.
  double max_residual = 0.0;
  int sweeps = 0;
};

/// All roots of a monic polynomial by Aberth-Ehrlich iteration started on a
/// circle inside the Fujiwara root bound. Throws SolverError after 500 sweeps.
PolynomialRoots polynomial_roots(const ScalarPolynomial& p);

/// Optimal (minimum total cost) one-to-one matching of two equally long
/// point sets under the cost |a - b| / max(1, |b|); returns the largest
/// matched cost.
double matched_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace fracstab
