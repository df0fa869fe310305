#include "fracstab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracstab {

namespace {

Complex determinant(const Matrix& M) {
  if (M.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Matrix>(M).determinant();
}

Complex int_pow(Complex z, std::int64_t e) {
  Complex result = 1.0;
  Complex base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

// Hungarian algorithm (shortest augmenting path) on a square cost matrix.
std::vector<int> assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

Complex eval_chi(Complex lambda, std::span<const double> alpha, const Matrix& A) {
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != alpha.size()) {
    throw InputError("eval_chi: dimension mismatch");
  }
  Matrix M = -A;
  for (Eigen::Index k = 0; k < M.rows(); ++k) M(k, k) += principal_pow(lambda, alpha[k]);
  return determinant(M);
}

Complex eval_p_det(Complex mu, const NormalizedOrders& orders, const Matrix& A) {
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != orders.dim()) {
    throw InputError("eval_p_det: dimension mismatch");
  }
  Matrix M = -A;
  for (Eigen::Index k = 0; k < M.rows(); ++k) M(k, k) += int_pow(mu, orders.q[k]);
  return determinant(M);
}

Complex ScalarPolynomial::operator()(Complex mu) const {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * mu + *it;
  return acc;
}

ScalarPolynomial interpolate_det_p(const NormalizedOrders& orders, const Matrix& A,
                                   std::optional<double> radius) {
  if (orders.N < 1) throw InputError("interpolate_det_p: N must be at least 1");
  const double rho = radius.value_or(
      std::pow(std::max(1.0, A.norm()), 1.0 / static_cast<double>(orders.sigma)));
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InputError("interpolation radius must be positive");

  const std::int64_t N = orders.N;
  const std::int64_t M = N + 1;
  std::vector<Complex> samples(static_cast<std::size_t>(M));
  for (std::int64_t j = 0; j < M; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M);
    samples[static_cast<std::size_t>(j)] = eval_p_det(std::polar(rho, angle), orders, A);
  }

  ScalarPolynomial poly;
  poly.radius = rho;
  poly.coeffs.resize(static_cast<std::size_t>(M));
  for (std::int64_t m = 0; m < M; ++m) {
    Complex acc = 0.0;
    for (std::int64_t j = 0; j < M; ++j) {
      // Reduce j*m modulo M first so the angle stays accurate.
      const auto jm = static_cast<double>((j * m) % M);
      acc += samples[static_cast<std::size_t>(j)] *
             std::polar(1.0, -2.0 * std::numbers::pi * jm / static_cast<double>(M));
    }
    poly.coeffs[static_cast<std::size_t>(m)] =
        acc / static_cast<double>(M) / std::pow(rho, static_cast<double>(m));
  }
  poly.leading_deviation = std::abs(poly.coeffs.back() - 1.0);
  if (!(poly.leading_deviation <= kMaxLeadingDeviation)) {
    throw SolverError("interpolated leading coefficient deviates from 1 by " +
                      std::to_string(poly.leading_deviation) +
                      "; the sampling radius " + std::to_string(rho) +
                      " is ill-conditioned, try a different radius");
  }
  poly.coeffs.back() = 1.0;
  return poly;
}

PolynomialRoots polynomial_roots(const ScalarPolynomial& p) {
  const std::size_t n = p.degree();
  if (n < 1) throw InputError("polynomial_roots: degree must be at least 1");
  if (p.coeffs.back() != Complex(1.0)) throw InputError("polynomial_roots: polynomial must be monic");

  // Fujiwara bound on the root moduli.
  double r0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::abs(p.coeffs[i]);
    if (c == 0.0) continue;
    const double e = static_cast<double>(n - i);
    r0 = std::max(r0, std::pow(i == 0 ? c / 2.0 : c, 1.0 / e));
  }
  r0 = r0 > 0.0 ? 2.0 * r0 : 1.0;

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double turn = (static_cast<double>(k) + 0.25) / static_cast<double>(n);
    z[k] = std::polar(0.5 * r0, 2.0 * std::numbers::pi * turn);
  }

  // Newton correction p/p' and a residual test, evaluated through the reversed
  // polynomial outside the unit disc to avoid overflow.
  struct Local {
    Complex ratio;
    double residual;
  };
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto newton = [&](Complex x) -> Local {
    Complex f = 0.0, df = 0.0;
    double mag = 0.0;
    if (std::abs(x) <= 1.0) {
      const double ax = std::abs(x);
      for (std::size_t i = n + 1; i-- > 0;) {
        df = df * x + f;
        f = f * x + p.coeffs[i];
        mag = mag * ax + std::abs(p.coeffs[i]);
      }
      return {f / df, std::abs(f) / mag};
    }
    const Complex y = 1.0 / x;
    const double ay = std::abs(y);
    for (std::size_t j = n + 1; j-- > 0;) {
      const Complex c = p.coeffs[n - j];
      df = df * y + f;
      f = f * y + c;
      mag = mag * ay + std::abs(c);
    }
    return {x * f / (static_cast<double>(n) * f - y * df), std::abs(f) / mag};
  };

  std::vector<bool> done(n, false);
  PolynomialRoots out;
  for (int sweep = 1; sweep <= 500; ++sweep) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const Local local = newton(z[k]);
      if (local.residual <= 4.0 * eps) {
        done[k] = true;
        continue;
      }
      all_done = false;
      const Complex ratio = local.ratio;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      if (std::abs(step) <= 4.0 * eps * std::abs(z[k])) done[k] = true;
    }
    out.sweeps = sweep;
    if (all_done) break;
    if (sweep == 500) throw SolverError("Aberth iteration did not converge in 500 sweeps");
  }

  out.roots = z;
  for (const Complex r : z) out.max_residual = std::max(out.max_residual, newton(r).residual);
  return out;
}

double matched_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InputError("matched_distance: sets differ in size");
  if (a.empty()) return 0.0;
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      cost[i][j] = std::abs(a[i] - b[j]) / std::max(1.0, std::abs(b[j]));
  const std::vector<int> match = assignment(cost);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, cost[i][static_cast<std::size_t>(match[i])]);
  return worst;
}

}  // namespace fracstab
