#pragma once

// Problem files and the end-to-end pipelines behind the command-line tool.
//
// A problem file is a JSON object:
//
//   {
//     "alpha": ["0.9", "0.72", ...],              // decimal strings or numbers
//       -- or --
//     "alpha_tilde": 0.9, "r": [1, 4, ...], "s": [1, 5, ...],
//     "A": [[26.2, 12.5, ...], ...],              // entries: number or [re, im]
//     "epsilon": 0.0,                             // optional
//     "backend": "dense",                         // optional: dense | krylov
//     "denominator_cap": 1000,                    // optional
//     "tolerances": {"residual": 1e-9, "chi": 1e-6, "zero": 1e-10},  // optional
//     "simulate": {"x0": [...], "T": 100, "h": 0.1}                  // optional
//   }
//
// docs/problem-format.md holds the full grammar.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracstab/eigensolver.hpp"
#include "fracstab/orders.hpp"
#include "fracstab/simulate.hpp"
#include "fracstab/stability.hpp"
#include "fracstab/verify.hpp"

namespace fracstab {

struct SimulateBlock {
  std::vector<double> x0;
  double T = 100.0;
  double h = 0.1;
};

struct Tolerances {
  double residual = kDefaultResidualTol;
  double chi = 1e-6;
  /// Unset selects default_zero_tolerance().
  std::optional<double> zero;
};

struct ProblemFile {
  OrderSpec orders;
  Matrix A;
  double epsilon = 0.0;
  Backend backend = Backend::dense;
  std::int64_t denominator_cap = kDefaultDenominatorCap;
  Tolerances tolerances;
  std::optional<SimulateBlock> simulate;
};

/// Parses problem-file text. Errors are InputError with a message naming the
/// offending field and position, e.g. "A[2][3]: expected a number".
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::filesystem::path& path);

struct CheckOutcome {
  NormalizedOrders orders;
  EigenResult eigen;
  StabilityReport report;
  double chi_tolerance = 0.0;
  bool chi_residuals_ok = true;
};

/// orders -> pencil -> finite eigenvalues -> classification and verdict,
/// with chi residuals evaluated at every reported zero.
CheckOutcome run_check(const ProblemFile& problem);

struct OracleOutcome {
  std::vector<Complex> pencil_mu;
  std::vector<Complex> oracle_roots;
  double distance = 0.0;
  double leading_deviation = 0.0;
  double radius = 0.0;
  double root_residual = 0.0;
};

/// Compares the pencil eigenvalues against the roots of the interpolated
/// monic det p(mu).
OracleOutcome run_oracle(const ProblemFile& problem, std::optional<double> radius = std::nullopt);

/// Simulation on the problem's real matrix; throws InputError for complex A.
Trajectory run_simulation(const ProblemFile& problem, const SimulateBlock& block);

}  // namespace fracstab
