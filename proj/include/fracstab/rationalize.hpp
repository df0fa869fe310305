#pragma once

// Rational orders from below for arbitrary real order vectors, with the
// annulus that encloses the zeros of chi and the imaginary-axis
// transversality probe.

#include <cstdint>
#include <span>
#include <vector>

#include "fracstab/common.hpp"
#include "fracstab/orders.hpp"

namespace fracstab {

/// {z : rho1 <= |z| <= rho2} with 0 < rho1 < 1 <= rho2.
struct Annulus {
  double rho1 = 0.5;
  double rho2 = 1.0;
};

struct RationalApproximation {
  OrderSpec alpha_star;
  /// alpha_star as reduced fractions num/den, one per component.
  std::vector<std::int64_t> numerator;
  std::vector<std::int64_t> denominator;
  double epsilon = 0.0;
  Annulus annulus;
  /// Certified upper bounds on sup |z^alpha_k - z^alpha*_k| over the annulus.
  std::vector<double> sup_deviation_bounds;
};

/// rho2 = (1 + ||A||_inf)^(1/alpha_min),
/// rho1 = min(1/2, (1 / (2 ||A^-1||_inf))^(1/alpha_min)).
/// Throws InputError if A is singular.
Annulus compute_annulus(std::span<const double> alpha, const Matrix& A);

/// Certified bound on sup |z^a - z^b| over the annulus for b <= a <= 1.
double deviation_bound(double a, double b, const Annulus& annulus);

/// Best rational approximation from below: the largest p/q <= x with
/// 1 <= q <= max_den, in lowest terms.
std::pair<std::int64_t, std::int64_t> best_lower_fraction(double x, std::int64_t max_den);

/// Componentwise rational alpha* <= alpha with certified deviation below
/// epsilon on an annulus that encloses the zeros of both characteristic
/// functions. Inputs that are already fractions with denominators up to the
/// cap are returned unchanged. Throws SolverError naming the smallest
/// achievable bound when the cap is too small.
RationalApproximation rational_approximation(std::span<const double> alpha, const Matrix& A,
                                             double epsilon,
                                             std::int64_t denominator_cap = kDefaultDenominatorCap);

struct TransversalityGrid {
  /// Number of sample points on the imaginary axis (split evenly between
  /// the two half-axes).
  std::size_t points = 4096;
  /// Half-width T of the sampled interval [-T, T]; <= 0 selects
  /// 2 rho2^alpha_tilde.
  double half_width = 0.0;
  /// Smallest sampled |t| as a fraction of T.
  double min_fraction = 1e-6;
};

/// Sampled minimum over z = i t of the smallest singular value of
/// diag(z^alpha*) - A, including the limit z = 0. The large-|t| asymptote
/// only grows and contributes nothing. Not a certificate.
double transversality_check(const RationalApproximation& approx, const Matrix& A,
                            const TransversalityGrid& grid = {});

}  // namespace fracstab
