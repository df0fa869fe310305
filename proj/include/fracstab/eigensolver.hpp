#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fracstab/common.hpp"
#include "fracstab/pencil.hpp"

namespace fracstab {

enum class Backend { dense, krylov };

std::string_view to_string(Backend b);
/// Throws InputError for anything other than "dense" or "krylov".
Backend backend_from_string(std::string_view name);

inline constexpr double kDefaultResidualTol = 1e-9;
/// Largest pencil dimension sigma*d accepted by the dense routines.
inline constexpr Eigen::Index kDenseSizeLimit = 2000;

struct EigenResult {
  /// The N finite eigenvalues, sorted by |arg mu|, then |mu|, then imag
  /// descending.
  std::vector<Complex> mu;
  /// Normalized residual of each mu, see pencil_residual().
  std::vector<double> residuals;
  Backend backend = Backend::dense;
  int iterations = 0;
  /// Regularizing shift used when Y was singular; zero otherwise.
  Complex shift = 0.0;
};

/// The N = sum q_k finite eigenvalues of mu X v = Y v, obtained from the
/// dominant eigenvalues of the reversed operator (Y - tau X)^{-1} X, whose
/// eigenvalues are 1 / (mu - tau). tau = 0 unless the A block is singular.
/// Every returned mu carries a residual certificate <= tol; otherwise
/// SolverError is thrown naming the worst residual.
EigenResult finite_eigenvalues(const Pencil& pencil, Backend backend = Backend::dense,
                               double tol = kDefaultResidualTol);

struct AllEigenvalues {
  std::vector<Complex> finite;
  std::int64_t infinite_count = 0;
};

/// Every eigenvalue of the pencil from one dense solve of the reversed
/// problem; eigenvalue zero of the reversed operator is mu = infinity.
/// Pencils larger than kDenseSizeLimit are rejected.
AllEigenvalues all_generalized_eigenvalues_dense(const Pencil& pencil);

/// Upper bound on the smallest singular value of (mu X - Y), normalized by
/// |mu| ||X||_F + ||Y||_F. Obtained from two steps of inverse iteration, so
/// it is always attained by an explicit vector.
double pencil_residual(const Pencil& pencil, Complex mu);

/// The A block of the pencil (top-right d x d block of Y).
Matrix pencil_system_matrix(const Pencil& pencil);

/// Deterministic ordering used for reported eigenvalues.
void sort_eigenvalues(std::vector<Complex>& mu);

}  // namespace fracstab
