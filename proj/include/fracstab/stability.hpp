#pragma once

#include <cstddef>
#include <vector>

#include "fracstab/common.hpp"
#include "fracstab/orders.hpp"

namespace fracstab {

/// Partition of the finite eigenvalues by location (index lists into mu).
///   cat2:  |mu| <= zero_tolerance (A singular, chi(0) = 0)
///   cat3:  |arg mu| > pi ats (no zero of chi)
///   cat4a: |arg mu| <= pi ats / 2 (zero of chi in the closed right half-plane)
///   cat4b: pi ats / 2 < |arg mu| <= pi ats (zero in the open left half-plane)
/// with ats = alpha_tilde / sigma.
struct Classification {
  std::vector<std::size_t> cat2;
  std::vector<std::size_t> cat3;
  std::vector<std::size_t> cat4a;
  std::vector<std::size_t> cat4b;
  double zero_tolerance = 0.0;

  std::size_t total() const { return cat2.size() + cat3.size() + cat4a.size() + cat4b.size(); }
};

struct StabilityReport {
  NormalizedOrders orders;
  std::vector<Complex> mu;
  Classification classification;
  /// Zeros of chi, lambda = mu^(sigma / alpha_tilde), in the order of mu.
  std::vector<Complex> cf_zeros;
  std::vector<double> chi_residuals;
  /// Number of zeros that duplicate another reported zero because both
  /// conjugate boundary eigenvalues |arg mu| = pi ats were kept.
  std::size_t boundary_duplicates = 0;
  bool a_singular = false;
  double epsilon = 0.0;
  double min_arg_mu = 0.0;
  bool stable = false;
};

/// Default zero tolerance 1e-10 (1 + ||A||_F)^(1/sigma).
double default_zero_tolerance(const NormalizedOrders& orders, const Matrix& A);

Classification classify(std::span<const Complex> mu, const NormalizedOrders& orders,
                        double zero_tol);

/// lambda = exp((sigma / alpha_tilde) (ln|mu| + i arg mu)) for every mu with
/// |arg mu| <= pi ats (inclusive); the rest are dropped.
std::vector<Complex> zeros_of_chi(std::span<const Complex> mu, const NormalizedOrders& orders);

/// Smallest singular value of A at most 1e-12 ||A||_F.
bool is_singular(const Matrix& A);

struct VerdictOptions {
  double epsilon = 0.0;
  /// Negative selects default_zero_tolerance().
  double zero_tol = -1.0;
};

/// stable = min |arg mu| > (pi/2 + epsilon) ats and A nonsingular.
StabilityReport verdict(std::span<const Complex> mu, const Matrix& A,
                        const NormalizedOrders& orders, const VerdictOptions& options = {});

}  // namespace fracstab
