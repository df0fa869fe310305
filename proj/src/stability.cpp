#include "fracstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracstab/verify.hpp"

namespace fracstab {

double default_zero_tolerance(const NormalizedOrders& orders, const Matrix& A) {
  return 1e-10 * std::pow(1.0 + A.norm(), 1.0 / static_cast<double>(orders.sigma));
}

Classification classify(std::span<const Complex> mu, const NormalizedOrders& orders,
                        double zero_tol) {
  Classification c;
  c.zero_tolerance = zero_tol;
  const double wedge = std::numbers::pi * orders.ats();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double arg = std::abs(principal_arg(mu[i]));
    if (std::abs(mu[i]) <= zero_tol) {
      c.cat2.push_back(i);
    } else if (arg > wedge) {
      c.cat3.push_back(i);
    } else if (arg <= wedge / 2.0) {
      c.cat4a.push_back(i);
    } else {
      c.cat4b.push_back(i);
    }
  }
  return c;
}

std::vector<Complex> zeros_of_chi(std::span<const Complex> mu, const NormalizedOrders& orders) {
  const double wedge = std::numbers::pi * orders.ats();
  const double power = 1.0 / orders.ats();
  std::vector<Complex> out;
  for (const Complex m : mu) {
    const double arg = principal_arg(m);
    if (std::abs(arg) > wedge) continue;
    if (m == Complex(0.0)) {
      out.emplace_back(0.0);
      continue;
    }
    out.push_back(std::exp(power * Complex(std::log(std::abs(m)), arg)));
  }
  return out;
}

bool is_singular(const Matrix& A) {
  if (A.size() == 0) return true;
  Eigen::JacobiSVD<Matrix> svd(A);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) <= 1e-12 * A.norm();
}

StabilityReport verdict(std::span<const Complex> mu, const Matrix& A,
                        const NormalizedOrders& orders, const VerdictOptions& options) {
  StabilityReport report;
  report.orders = orders;
  report.mu.assign(mu.begin(), mu.end());
  report.epsilon = options.epsilon;
  const double zero_tol =
      options.zero_tol >= 0.0 ? options.zero_tol : default_zero_tolerance(orders, A);
  report.classification = classify(mu, orders, zero_tol);
  report.a_singular = is_singular(A) || !report.classification.cat2.empty();

  // Category-2 eigenvalues map to the zero lambda = 0 exactly.
  std::vector<Complex> candidates;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    candidates.push_back(std::abs(mu[i]) <= zero_tol ? Complex(0.0) : mu[i]);
  }
  report.cf_zeros = zeros_of_chi(candidates, orders);

  const std::vector<double> alpha = orders.alpha();
  for (const Complex lambda : report.cf_zeros) {
    report.chi_residuals.push_back(std::abs(eval_chi(lambda, alpha, A)));
  }
  for (std::size_t i = 0; i < report.cf_zeros.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Complex a = report.cf_zeros[i], b = report.cf_zeros[j];
      if (a == Complex(0.0)) break;
      if (std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b)) && std::abs(a.imag()) <= 1e-8 * std::max(1.0, std::abs(a))) {
        ++report.boundary_duplicates;
        break;
      }
    }
  }

  report.min_arg_mu = std::numeric_limits<double>::infinity();
  for (const Complex m : candidates) report.min_arg_mu = std::min(report.min_arg_mu, std::abs(principal_arg(m)));
  if (mu.empty()) report.min_arg_mu = std::numbers::pi;
  report.stable = report.min_arg_mu > (std::numbers::pi / 2.0 + options.epsilon) * orders.ats() &&
                  !report.a_singular;
  return report;
}

}  // namespace fracstab
