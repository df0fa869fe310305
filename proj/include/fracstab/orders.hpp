#pragma once

// Exact rational bookkeeping for incommensurate order vectors
// alpha_k = alpha_tilde * r_k / s_k.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracstab/common.hpp"

namespace fracstab {

/// Order vector in the form alpha_tilde * (r_k / s_k), every fraction in
/// lowest terms, max ratio exactly 1 and min ratio strictly below 1.
struct OrderSpec {
  double alpha_tilde = 1.0;
  std::vector<std::int64_t> r;
  std::vector<std::int64_t> s;

  std::size_t dim() const { return r.size(); }
  /// Floating-point orders alpha_tilde * r_k / s_k.
  std::vector<double> alpha() const;

  bool operator==(const OrderSpec&) const = default;
};

/// Orders brought to the common denominator sigma = lcm(s_k), so that
/// alpha_k = alpha_tilde * q_k / sigma.
struct NormalizedOrders {
  std::int64_t sigma = 0;
  std::vector<std::int64_t> q;
  /// Number of finite eigenvalues, sum of q_k.
  std::int64_t N = 0;
  double alpha_tilde = 1.0;

  std::size_t dim() const { return q.size(); }
  /// alpha_tilde / sigma, the exponent of the substitution mu = lambda^ats.
  double ats() const { return alpha_tilde / static_cast<double>(sigma); }
  std::vector<double> alpha() const;

  bool operator==(const NormalizedOrders&) const = default;
};

inline constexpr std::int64_t kDefaultDenominatorCap = 1000;

/// Checks raw (alpha_tilde, r, s) input and reduces each r_k/s_k to lowest
/// terms. Throws InputError on dimension mismatch, non-positive entries,
/// r_k > s_k, max ratio != 1, commensurate orders or alpha_tilde outside
/// (0, 1].
OrderSpec validate_order_spec(double alpha_tilde,
                              std::span<const std::int64_t> r,
                              std::span<const std::int64_t> s);

/// Parses decimal strings such as "0.72" exactly (no binary floating point
/// in the ratio computation). alpha_tilde is the largest entry; the ratios
/// alpha_k / alpha_tilde become reduced fractions. A ratio denominator above
/// `denominator_cap` is an error: such inputs should go through
/// rational_approximation instead.
OrderSpec parse_decimal_orders(std::span<const std::string> alpha,
                               std::int64_t denominator_cap = kDefaultDenominatorCap);

/// sigma = lcm(s_1..s_d), q_k = r_k sigma / s_k, N = sum q_k. Integer
/// overflow is reported as InputError.
NormalizedOrders normalize_orders(const OrderSpec& spec);

namespace checked {
std::int64_t mul(std::int64_t a, std::int64_t b);
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
}  // namespace checked

}  // namespace fracstab
