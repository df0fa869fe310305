#include "fracstab/rationalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace fracstab {

namespace {

double inf_norm(const Matrix& M) { return M.cwiseAbs().rowwise().sum().maxCoeff(); }

double min_of(std::span<const double> v) { return *std::min_element(v.begin(), v.end()); }

void check_orders(std::span<const double> alpha) {
  if (alpha.empty()) throw InputError("empty order vector");
  for (const double a : alpha) {
    if (!(a > 0.0 && a <= 1.0)) throw InputError("orders must lie in (0, 1]");
  }
}

// Exact small fraction for x, if one with denominator <= cap reproduces x
// to within a few ulps.
bool exact_fraction(double x, std::int64_t cap, std::int64_t& num, std::int64_t& den) {
  for (std::int64_t q = 1; q <= cap; ++q) {
    const double p = std::round(x * static_cast<double>(q));
    if (std::abs(p / static_cast<double>(q) - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
      num = static_cast<std::int64_t>(p);
      den = q;
      const std::int64_t g = std::gcd(num, den);
      num /= g;
      den /= g;
      return true;
    }
  }
  return false;
}

struct Candidate {
  std::vector<std::int64_t> num, den;
  std::vector<double> value;
};

OrderSpec to_order_spec(const Candidate& c) {
  std::size_t kmax = 0;
  for (std::size_t k = 1; k < c.value.size(); ++k) {
    // Compare num_k/den_k > num_m/den_m exactly.
    if (static_cast<__int128>(c.num[k]) * c.den[kmax] > static_cast<__int128>(c.num[kmax]) * c.den[k]) kmax = k;
  }
  std::vector<std::int64_t> r(c.num.size()), s(c.num.size());
  for (std::size_t k = 0; k < c.num.size(); ++k) {
    // (num_k/den_k) / (num_m/den_m) = num_k den_m / (den_k num_m)
    r[k] = checked::mul(c.num[k], c.den[kmax]);
    s[k] = checked::mul(c.den[k], c.num[kmax]);
  }
  const double alpha_tilde = static_cast<double>(c.num[kmax]) / static_cast<double>(c.den[kmax]);
  return validate_order_spec(alpha_tilde, r, s);
}

bool commensurate(const Candidate& c) {
  for (std::size_t k = 1; k < c.num.size(); ++k) {
    if (c.num[k] != c.num[0] || c.den[k] != c.den[0]) return false;
  }
  return true;
}

}  // namespace

Annulus compute_annulus(std::span<const double> alpha, const Matrix& A) {
  check_orders(alpha);
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != alpha.size()) {
    throw InputError("compute_annulus: dimension mismatch");
  }
  Eigen::FullPivLU<Matrix> lu(A);
  if (A.norm() == 0.0 || !lu.isInvertible()) throw InputError("compute_annulus: A is singular");
  const double amin = min_of(alpha);
  Annulus an;
  an.rho2 = std::pow(1.0 + inf_norm(A), 1.0 / amin);
  const double base = 1.0 / (2.0 * inf_norm(lu.inverse()));
  an.rho1 = std::min(0.5, std::pow(base, 1.0 / amin));
  return an;
}

double deviation_bound(double a, double b, const Annulus& annulus) {
  const double delta = a - b;
  if (delta <= 0.0) return 0.0;
  const double log_bound = std::max(std::abs(std::log(annulus.rho1)), std::log(annulus.rho2)) + std::numbers::pi;
  return std::max(1.0, annulus.rho2) * std::expm1(delta * log_bound);
}

std::pair<std::int64_t, std::int64_t> best_lower_fraction(double x, std::int64_t max_den) {
  if (!(x >= 0.0)) throw InputError("best_lower_fraction: x must be non-negative");
  if (max_den < 1) throw InputError("best_lower_fraction: max_den must be positive");
  std::int64_t best_p = 0, best_q = 1;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const auto qd = static_cast<double>(q);
    auto p = static_cast<std::int64_t>(std::floor(x * qd));
    // fma gives the exact sign of p - x q.
    while (std::fma(-x, qd, static_cast<double>(p)) > 0.0) --p;
    while (std::fma(-x, qd, static_cast<double>(p + 1)) <= 0.0) ++p;
    if (static_cast<__int128>(p) * best_q > static_cast<__int128>(best_p) * q) {
      best_p = p;
      best_q = q;
    }
  }
  const std::int64_t g = std::gcd(best_p, best_q);
  return {best_p / g, best_q / g};
}

RationalApproximation rational_approximation(std::span<const double> alpha, const Matrix& A,
                                             double epsilon, std::int64_t denominator_cap) {
  check_orders(alpha);
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (denominator_cap < 1) throw InputError("denominator cap must be positive");
  const std::size_t d = alpha.size();

  RationalApproximation out;
  out.epsilon = epsilon;

  // Already rational with small denominators: identity.
  Candidate exact;
  exact.num.resize(d);
  exact.den.resize(d);
  bool all_exact = true;
  for (std::size_t k = 0; k < d && all_exact; ++k) {
    all_exact = exact_fraction(alpha[k], denominator_cap, exact.num[k], exact.den[k]);
  }
  if (all_exact) {
    if (commensurate(exact)) throw InputError("commensurate orders: all alpha_k are equal");
    exact.value.assign(alpha.begin(), alpha.end());
    out.alpha_star = to_order_spec(exact);
    out.numerator = exact.num;
    out.denominator = exact.den;
    out.annulus = compute_annulus(alpha, A);
    out.sup_deviation_bounds.assign(d, 0.0);
    return out;
  }

  double best_bound = std::numeric_limits<double>::infinity();
  for (std::int64_t cap = 1; cap <= denominator_cap; ++cap) {
    Candidate cand;
    cand.num.resize(d);
    cand.den.resize(d);
    cand.value.resize(d);
    bool positive = true;
    for (std::size_t k = 0; k < d; ++k) {
      const auto [p, q] = best_lower_fraction(alpha[k], cap);
      cand.num[k] = p;
      cand.den[k] = q;
      cand.value[k] = static_cast<double>(p) / static_cast<double>(q);
      positive = positive && p > 0;
    }
    if (!positive || commensurate(cand)) continue;

    // The annulus must enclose the zeros of both systems; the smaller
    // orders give the wider annulus.
    const Annulus an = compute_annulus(cand.value, A);
    std::vector<double> bounds(d);
    double worst = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      bounds[k] = deviation_bound(alpha[k], cand.value[k], an);
      worst = std::max(worst, bounds[k]);
    }
    best_bound = std::min(best_bound, worst);
    if (worst < epsilon) {
      out.alpha_star = to_order_spec(cand);
      out.numerator = cand.num;
      out.denominator = cand.den;
      out.annulus = an;
      out.sup_deviation_bounds = bounds;
      return out;
    }
  }
  throw SolverError("no rational approximation with denominators <= " + std::to_string(denominator_cap) +
                    " certifies epsilon = " + std::to_string(epsilon) +
                    "; smallest achievable bound is " + std::to_string(best_bound));
}

double transversality_check(const RationalApproximation& approx, const Matrix& A,
                            const TransversalityGrid& grid) {
  if (grid.points == 0) throw InputError("transversality_check: empty grid");
  const std::vector<double> alpha = approx.alpha_star.alpha();
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != alpha.size()) {
    throw InputError("transversality_check: dimension mismatch");
  }
  const double T = grid.half_width > 0.0
                       ? grid.half_width
                       : 2.0 * std::pow(approx.annulus.rho2, approx.alpha_star.alpha_tilde);

  auto sigma_min = [&](Complex z) {
    Matrix M = -A;
    for (Eigen::Index k = 0; k < M.rows(); ++k) M(k, k) += principal_pow(z, alpha[static_cast<std::size_t>(k)]);
    Eigen::JacobiSVD<Matrix> svd(M);
    return svd.singularValues()(svd.singularValues().size() - 1);
  };

  double result = sigma_min(Complex(0.0));
  const std::size_t half = std::max<std::size_t>(1, grid.points / 2);
  const double lo = std::log(T * grid.min_fraction);
  const double hi = std::log(T);
  for (std::size_t i = 0; i < half; ++i) {
    const double frac = half == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(half - 1);
    const double t = std::exp(lo + frac * (hi - lo));
    result = std::min(result, sigma_min(Complex(0.0, t)));
    result = std::min(result, sigma_min(Complex(0.0, -t)));
  }
  return result;
}

}  // namespace fracstab
