#include "fracstab/arnoldi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "fracstab/hessenberg_qr.hpp"

namespace fracstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

class Factorization {
 public:
  Factorization(const LinearOperator& op, Eigen::Index n, Eigen::Index m, std::uint64_t seed)
      : op_(op), n_(n), m_(m), V_(Matrix::Zero(n, m + 1)), H_(Matrix::Zero(m + 1, m)), rng_(seed) {}

  void start() {
    Vector v = op_(random_vector());
    ++applications_;
    if (v.norm() == 0.0) v = random_vector();
    V_.col(0) = v.normalized();
  }

  // Grows the factorization from k to m columns.
  void extend(Eigen::Index k) {
    for (Eigen::Index j = k; j < m_; ++j) {
      Vector w = op_(V_.col(j));
      ++applications_;
      const double wnorm = w.norm();
      Vector h = orthogonalize(w, j + 1);
      H_.col(j).head(j + 1) = h;
      const double beta = w.norm();
      if (j + 1 == n_) {
        // Full space: the residual is rounding noise.
        H_(j + 1, j) = beta;
        residual_norm_ = 0.0;
        V_.col(j + 1).setZero();
        continue;
      }
      if (beta <= 1e-12 * std::max(wnorm, h.norm())) {
        // Invariant subspace: continue with a new orthogonal direction.
        H_(j + 1, j) = 0.0;
        V_.col(j + 1) = fresh_direction(j + 1);
      } else {
        H_(j + 1, j) = beta;
        V_.col(j + 1) = w / beta;
      }
    }
    residual_norm_ = (m_ == n_) ? 0.0 : std::abs(H_(m_, m_ - 1));
  }

  // Implicit restart keeping k columns; `shifts` are the unwanted Ritz values.
  void restart(Eigen::Index k, const std::vector<Complex>& shifts) {
    Matrix Hm = H_.topLeftCorner(m_, m_);
    Matrix Q = Matrix::Identity(m_, m_);
    for (const Complex s : shifts) {
      std::vector<std::pair<double, Complex>> rot;
      rot.reserve(static_cast<std::size_t>(m_));
      for (Eigen::Index i = 0; i < m_; ++i) Hm(i, i) -= s;
      for (Eigen::Index i = 0; i + 1 < m_; ++i) {
        const auto [c, sn] = givens(Hm(i, i), Hm(i + 1, i));
        for (Eigen::Index j = 0; j < m_; ++j) {
          const Complex a = Hm(i, j), b = Hm(i + 1, j);
          Hm(i, j) = c * a + sn * b;
          Hm(i + 1, j) = -std::conj(sn) * a + c * b;
        }
        Hm(i + 1, i) = 0.0;
        rot.emplace_back(c, sn);
      }
      for (Eigen::Index i = 0; i + 1 < m_; ++i) {
        const auto [c, sn] = rot[static_cast<std::size_t>(i)];
        for (Eigen::Index r = 0; r < m_; ++r) {
          Complex a = Hm(r, i), b = Hm(r, i + 1);
          Hm(r, i) = a * c + b * std::conj(sn);
          Hm(r, i + 1) = -a * sn + b * c;
          a = Q(r, i);
          b = Q(r, i + 1);
          Q(r, i) = a * c + b * std::conj(sn);
          Q(r, i + 1) = -a * sn + b * c;
        }
      }
      for (Eigen::Index i = 0; i < m_; ++i) Hm(i, i) += s;
      // Keep the Hessenberg pattern exact.
      for (Eigen::Index j = 0; j < m_; ++j)
        for (Eigen::Index i = j + 2; i < m_; ++i) Hm(i, j) = 0.0;
    }

    const Vector f = H_(m_, m_ - 1) * V_.col(m_);
    Matrix Vnew = V_.leftCols(m_) * Q.leftCols(k + 1);
    Vector fk = Vnew.col(k) * Hm(k, k - 1) + f * Q(m_ - 1, k - 1);

    H_.setZero();
    H_.topLeftCorner(k, k) = Hm.topLeftCorner(k, k);
    V_.setZero();
    V_.leftCols(k) = Vnew.leftCols(k);
    const double beta = fk.norm();
    orthogonalize(fk, k);
    const double beta2 = fk.norm();
    if (beta2 <= 1e-12 * std::max(beta, Hm.topLeftCorner(k, k).norm())) {
      H_(k, k - 1) = 0.0;
      V_.col(k) = fresh_direction(k);
    } else {
      H_(k, k - 1) = beta2;
      V_.col(k) = fk / beta2;
    }
    extend(k);
  }

  Matrix hessenberg() const { return H_.topLeftCorner(m_, m_); }
  double residual_norm() const { return residual_norm_; }
  int applications() const { return applications_; }

 private:
  static std::pair<double, Complex> givens(Complex x, Complex y) {
    if (y == Complex(0.0)) return {1.0, 0.0};
    if (x == Complex(0.0)) return {0.0, std::conj(y) / std::abs(y)};
    const double ax = std::abs(x);
    const double norm = std::hypot(ax, std::abs(y));
    return {ax / norm, (x / ax) * std::conj(y) / norm};
  }

  // Classical Gram-Schmidt with one reorthogonalization against the first
  // `count` basis vectors.
  Vector orthogonalize(Vector& w, Eigen::Index count) const {
    const auto basis = V_.leftCols(count);
    Vector h = basis.adjoint() * w;
    w -= basis * h;
    const Vector h2 = basis.adjoint() * w;
    w -= basis * h2;
    return h + h2;
  }

  Vector random_vector() {
    std::normal_distribution<double> normal;
    Vector v(n_);
    for (Eigen::Index i = 0; i < n_; ++i) v(i) = Complex(normal(rng_), normal(rng_));
    return v;
  }

  Vector fresh_direction(Eigen::Index count) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Vector r = random_vector();
      const double before = r.norm();
      orthogonalize(r, count);
      if (r.norm() > 1e-8 * before) return r.normalized();
    }
    throw SolverError("Arnoldi: unable to extend the Krylov basis");
  }

  const LinearOperator& op_;
  Eigen::Index n_;
  Eigen::Index m_;
  Matrix V_;
  Matrix H_;
  std::mt19937_64 rng_;
  double residual_norm_ = 0.0;
  int applications_ = 0;
};

// Right eigenvector of a small Hessenberg matrix by inverse iteration.
Vector ritz_vector(const Matrix& H, Complex theta, std::mt19937_64& rng) {
  const Eigen::Index m = H.rows();
  const double scale = std::max(H.cwiseAbs().maxCoeff(), 1e-300);
  Matrix shifted = H;
  shifted.diagonal().array() -= theta + Complex(kEps * scale, kEps * scale);
  Eigen::PartialPivLU<Matrix> lu(shifted);
  std::normal_distribution<double> normal;
  Vector y(m);
  for (Eigen::Index i = 0; i < m; ++i) y(i) = Complex(normal(rng), normal(rng));
  for (int it = 0; it < 3; ++it) {
    y = lu.solve(y);
    const double norm = y.norm();
    if (!std::isfinite(norm) || norm == 0.0) break;
    y /= norm;
  }
  return y;
}

}  // namespace

ArnoldiResult arnoldi_dominant(const LinearOperator& op, Eigen::Index n,
                               const ArnoldiOptions& options) {
  const Eigen::Index nev = options.nev;
  if (nev < 1 || nev > n) throw InputError("Arnoldi: nev must lie in [1, n]");
  Eigen::Index m = options.ncv > 0 ? options.ncv : std::min<Eigen::Index>(2 * nev + 10, n);
  m = std::min(m, n);
  if (m < n && m <= nev) m = std::min(n, nev + 2);

  Factorization fact(op, n, m, options.seed);
  fact.start();
  fact.extend(0);
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);

  ArnoldiResult result;
  for (int restart = 0;; ++restart) {
    const Matrix Hm = fact.hessenberg();
    std::vector<Complex> theta = hessenberg_eigenvalues(Hm);
    std::vector<std::size_t> order(theta.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(theta[a]) > std::abs(theta[b]);
    });

    const double hnorm = Hm.norm();
    bool converged = true;
    if (fact.residual_norm() > 0.0) {
      for (Eigen::Index i = 0; i < nev && converged; ++i) {
        const Complex t = theta[order[static_cast<std::size_t>(i)]];
        const Vector y = ritz_vector(Hm, t, rng);
        const double ritz_residual = fact.residual_norm() * std::abs(y(m - 1));
        converged = ritz_residual <= options.tol * std::max(std::abs(t), kEps * hnorm);
      }
    }
    if (converged || m == n) {
      result.values.reserve(static_cast<std::size_t>(nev));
      for (Eigen::Index i = 0; i < nev; ++i) {
        result.values.push_back(theta[order[static_cast<std::size_t>(i)]]);
      }
      result.restarts = restart;
      result.operator_applications = fact.applications();
      return result;
    }
    if (restart >= options.max_restarts) {
      throw SolverError("Arnoldi: no convergence after " + std::to_string(restart) + " restarts");
    }
    // Keep a few extra Ritz values beyond nev to speed up convergence.
    const Eigen::Index k = std::min(m - 1, nev + (m - nev) / 3);
    std::vector<Complex> shifts;
    for (Eigen::Index i = k; i < m; ++i) shifts.push_back(theta[order[static_cast<std::size_t>(i)]]);
    fact.restart(k, shifts);
  }
}

}  // namespace fracstab
