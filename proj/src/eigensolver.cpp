#include "fracstab/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/SparseLU>

#include "fracstab/arnoldi.hpp"
#include "fracstab/hessenberg_qr.hpp"

namespace fracstab {

namespace {

using ColSparse = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;

// A is treated as singular for factorization purposes below this
// reciprocal condition number.
constexpr double kSingularRcond = 1e-12;
// Reciprocal condition number below which a shifted factorization is
// considered broken down.
constexpr double kBreakdownRcond = 1e-14;
// Largest dimension for which the multiplicity of mu = 0 is enumerated.
constexpr int kMaxZeroMultiplicityDim = 12;

double smallest_singular_value(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double largest_singular_value(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

Complex regularizing_shift(const Matrix& A) {
  return 0.1 * (1.0 + A.norm()) * std::polar(1.0, std::numbers::pi / 7.0);
}

bool needs_shift(const Matrix& A) {
  const double smax = largest_singular_value(A);
  return smax == 0.0 || smallest_singular_value(A) <= kSingularRcond * smax;
}

std::vector<Complex> shifts_to_try(const Matrix& A) {
  if (!needs_shift(A)) return {Complex(0.0)};
  const Complex tau = regularizing_shift(A);
  return {tau, tau / 3.0};
}

// Dense reversed operator (Y - tau X)^{-1} X. Returns false on breakdown.
bool dense_reversed_operator(const Pencil& p, Complex tau, Matrix& W) {
  const Matrix X = Matrix(p.X);
  const Matrix M = Matrix(p.Y) - tau * X;
  Eigen::PartialPivLU<Matrix> lu(M);
  if (!(lu.rcond() > kBreakdownRcond)) return false;
  W = lu.solve(X);
  return W.allFinite();
}

// Removes indices whose column is exactly zero on the remaining rows; each
// such index carries an eigenvalue 0 (mu = infinity). Returns kept indices.
std::vector<Eigen::Index> deflate_zero_columns(const Matrix& W) {
  const Eigen::Index n = W.rows();
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (W(i, j) != Complex(0.0)) ++count[static_cast<std::size_t>(j)];
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  std::deque<Eigen::Index> queue;
  for (Eigen::Index j = 0; j < n; ++j)
    if (count[static_cast<std::size_t>(j)] == 0) queue.push_back(j);
  while (!queue.empty()) {
    const Eigen::Index r = queue.front();
    queue.pop_front();
    if (removed[static_cast<std::size_t>(r)]) continue;
    removed[static_cast<std::size_t>(r)] = true;
    // Dropping row r lowers the counts of the columns it touches.
    for (Eigen::Index j = 0; j < n; ++j) {
      if (removed[static_cast<std::size_t>(j)] || W(r, j) == Complex(0.0)) continue;
      if (--count[static_cast<std::size_t>(j)] == 0) queue.push_back(j);
    }
  }
  std::vector<Eigen::Index> kept;
  for (Eigen::Index j = 0; j < n; ++j)
    if (!removed[static_cast<std::size_t>(j)]) kept.push_back(j);
  return kept;
}

struct DenseSpectrum {
  std::vector<Complex> theta;  // eigenvalues of W after exact deflation
  std::int64_t deflated = 0;
  double wnorm = 0.0;
  Complex tau = 0.0;
};

DenseSpectrum dense_spectrum(const Pencil& p) {
  if (p.size() > kDenseSizeLimit) {
    throw InputError("pencil dimension " + std::to_string(p.size()) +
                     " exceeds the dense limit " + std::to_string(kDenseSizeLimit));
  }
  const Matrix A = pencil_system_matrix(p);
  for (const Complex tau : shifts_to_try(A)) {
    Matrix W;
    if (!dense_reversed_operator(p, tau, W)) continue;
    const std::vector<Eigen::Index> kept = deflate_zero_columns(W);
    const auto nk = static_cast<Eigen::Index>(kept.size());
    Matrix Wk(nk, nk);
    for (Eigen::Index i = 0; i < nk; ++i)
      for (Eigen::Index j = 0; j < nk; ++j) Wk(i, j) = W(kept[i], kept[j]);
    DenseSpectrum out;
    out.theta = dense_eigenvalues(std::move(Wk));
    out.deflated = static_cast<std::int64_t>(p.size() - nk);
    out.wnorm = W.norm();
    out.tau = tau;
    return out;
  }
  throw SolverError("factorization of Y - tau X broke down for every regularizing shift");
}

// Multiplicity of mu = 0 as a root of det(diag(mu^q_k) - A): the smallest
// sum of q_k over index sets S whose complement carries a nonsingular
// principal submatrix of A. Returns -1 when d is too large to enumerate.
std::int64_t zero_multiplicity(const Pencil& p, const Matrix& A) {
  const auto d = static_cast<int>(p.d);
  if (d > kMaxZeroMultiplicityDim) return -1;
  const double threshold = kSingularRcond * largest_singular_value(A);
  std::int64_t best = p.N;
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    std::int64_t weight = 0;
    std::vector<int> rest;
    for (int k = 0; k < d; ++k) {
      if (mask & (1u << k)) {
        weight += p.q[static_cast<std::size_t>(k)];
      } else {
        rest.push_back(k);
      }
    }
    if (weight >= best) continue;
    Matrix sub(rest.size(), rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i)
      for (std::size_t j = 0; j < rest.size(); ++j) sub(i, j) = A(rest[i], rest[j]);
    if (rest.empty() || smallest_singular_value(sub) > threshold) best = weight;
  }
  return best;
}

std::vector<Complex> dominant(std::vector<Complex> theta, std::int64_t count) {
  std::stable_sort(theta.begin(), theta.end(),
                   [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  theta.resize(static_cast<std::size_t>(count));
  return theta;
}

std::vector<Complex> to_mu(const std::vector<Complex>& theta, Complex tau) {
  std::vector<Complex> mu;
  mu.reserve(theta.size());
  for (const Complex t : theta) {
    if (t == Complex(0.0)) throw SolverError("reversed operator has fewer than N nonzero eigenvalues");
    mu.push_back(tau + 1.0 / t);
  }
  return mu;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::dense ? "dense" : "krylov"; }

Backend backend_from_string(std::string_view name) {
  if (name == "dense") return Backend::dense;
  if (name == "krylov") return Backend::krylov;
  throw InputError("unknown backend '" + std::string(name) + "' (expected dense or krylov)");
}

Matrix pencil_system_matrix(const Pencil& p) {
  const auto d = static_cast<Eigen::Index>(p.d);
  return Matrix(p.Y.block(0, p.size() - d, d, d));
}

void sort_eigenvalues(std::vector<Complex>& mu) {
  std::stable_sort(mu.begin(), mu.end(), [](Complex a, Complex b) {
    const double aa = std::abs(principal_arg(a)), ab = std::abs(principal_arg(b));
    if (aa != ab) return aa < ab;
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a.imag() > b.imag();
  });
}

double pencil_residual(const Pencil& p, Complex mu) {
  const ColSparse M = ColSparse(mu * p.X - p.Y);
  const double scale = std::abs(mu) * p.X.norm() + p.Y.norm();
  std::mt19937_64 rng(0x7e57ULL);
  std::normal_distribution<double> normal;
  Vector x(p.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(normal(rng), normal(rng));
  x.normalize();

  Eigen::SparseLU<ColSparse> lu;
  lu.analyzePattern(M);
  lu.factorize(M);
  if (lu.info() != Eigen::Success) {
    // Exactly singular factorization: fall back to a dense SVD.
    return smallest_singular_value(Matrix(M)) / scale;
  }
  // Inverse iteration on M^H M; every iterate is an explicit vector, so the
  // best one bounds the smallest singular value from above.
  double best = (M * x).norm();
  for (int it = 0; it < 2; ++it) {
    Vector y = lu.solve(x);
    double norm = y.norm();
    if (!std::isfinite(norm) || norm == 0.0) break;
    y /= norm;
    best = std::min(best, (M * y).norm());
    x = lu.adjoint().solve(y);
    norm = x.norm();
    if (!std::isfinite(norm) || norm == 0.0) break;
    x /= norm;
    best = std::min(best, (M * x).norm());
  }
  return best / scale;
}

namespace {

// Two-sided Rayleigh quotient with left and right vectors from inverse
// iteration at the fixed shift mu. Ill-conditioned Ritz values gain
// accuracy; returns mu unchanged when the refinement is not trustworthy.
Complex refine_eigenvalue(const Pencil& p, Complex mu) {
  const ColSparse M = ColSparse(mu * p.X - p.Y);
  Eigen::SparseLU<ColSparse> lu;
  lu.analyzePattern(M);
  lu.factorize(M);
  if (lu.info() != Eigen::Success) return mu;
  std::mt19937_64 rng(0x5ef1eULL);
  std::normal_distribution<double> normal;
  Vector x(p.size()), y(p.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x(i) = Complex(normal(rng), normal(rng));
    y(i) = Complex(normal(rng), normal(rng));
  }
  const ColSparse X = ColSparse(p.X);
  const ColSparse Xh = ColSparse(p.X.adjoint());
  for (int it = 0; it < 3; ++it) {
    x = lu.solve(X * x);
    y = lu.adjoint().solve(Xh * y);
    const double nx = x.norm(), ny = y.norm();
    if (!std::isfinite(nx) || !std::isfinite(ny) || nx == 0.0 || ny == 0.0) return mu;
    x /= nx;
    y /= ny;
  }
  const Complex den = y.dot(X * x);
  if (den == Complex(0.0)) return mu;
  const Complex refined = y.dot(p.Y * x) / den;
  if (!std::isfinite(std::abs(refined)) || std::abs(refined - mu) > 1e-4 * std::max(1.0, std::abs(mu))) return mu;
  return refined;
}

}  // namespace

EigenResult finite_eigenvalues(const Pencil& p, Backend backend, double tol) {
  if (!(tol > 0.0)) throw InputError("residual tolerance must be positive");
  if (p.N < 1 || p.N >= p.size()) throw InputError("pencil has an inconsistent finite-eigenvalue count");

  EigenResult result;
  result.backend = backend;
  std::vector<Complex> theta;

  if (backend == Backend::dense) {
    DenseSpectrum spec = dense_spectrum(p);
    if (static_cast<std::int64_t>(spec.theta.size()) < p.N) {
      throw SolverError("exact deflation left fewer than N eigenvalues");
    }
    theta = dominant(std::move(spec.theta), p.N);
    result.shift = spec.tau;
  } else {
    const Matrix A = pencil_system_matrix(p);
    bool done = false;
    for (const Complex tau : shifts_to_try(A)) {
      const ColSparse M = ColSparse(p.Y - tau * p.X);
      Eigen::SparseLU<ColSparse> lu;
      lu.analyzePattern(M);
      lu.factorize(M);
      if (lu.info() != Eigen::Success) continue;
      const SparseMatrix& X = p.X;
      const LinearOperator op = [&lu, &X](const Vector& v) -> Vector { return lu.solve(X * v); };
      ArnoldiOptions opts;
      opts.nev = p.N;
      const ArnoldiResult ar = arnoldi_dominant(op, p.size(), opts);
      bool finite = true;
      for (const Complex t : ar.values) finite = finite && std::isfinite(std::abs(t));
      if (!finite) continue;
      theta = ar.values;
      result.iterations = ar.restarts;
      result.shift = tau;
      done = true;
      break;
    }
    if (!done) throw SolverError("sparse factorization of Y - tau X broke down for every regularizing shift");
  }

  result.mu = to_mu(theta, result.shift);

  // A defective zero eigenvalue scatters into a ring; when A is singular the
  // multiplicity is known and the ring is snapped back to zero.
  if (result.shift != Complex(0.0)) {
    const std::int64_t m0 = zero_multiplicity(p, pencil_system_matrix(p));
    if (m0 > 0 && pencil_residual(p, 0.0) <= tol) {
      std::vector<std::size_t> idx(result.mu.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(result.mu[a]) < std::abs(result.mu[b]);
      });
      for (std::int64_t k = 0; k < m0 && k < static_cast<std::int64_t>(idx.size()); ++k) {
        result.mu[idx[static_cast<std::size_t>(k)]] = 0.0;
      }
    }
  }

  std::vector<double> residuals(result.mu.size());
  for (std::size_t i = 0; i < result.mu.size(); ++i) residuals[i] = pencil_residual(p, result.mu[i]);
  if (backend == Backend::krylov) {
    for (std::size_t i = 0; i < result.mu.size(); ++i) {
      if (result.mu[i] == Complex(0.0)) continue;
      const Complex refined = refine_eigenvalue(p, result.mu[i]);
      const double r = pencil_residual(p, refined);
      if (r <= std::max(residuals[i], tol)) {
        result.mu[i] = refined;
        residuals[i] = r;
      }
    }
  }

  // A defective eigenvalue comes back as a ring of values whose mean is
  // accurate; a failing cluster is replaced by its mean, or by zero, when
  // that value certifies.
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (residuals[i] <= tol) continue;
    for (const double radius : {1e-8, 1e-6, 1e-4, 1e-3, 1e-2}) {
      std::vector<std::size_t> cluster = {i};
      std::vector<bool> member(theta.size(), false);
      member[i] = true;
      for (std::size_t head = 0; head < cluster.size(); ++head) {
        const Complex c = theta[cluster[head]];
        for (std::size_t j = 0; j < theta.size(); ++j) {
          if (member[j]) continue;
          const double scale = std::max({1.0, std::abs(c), std::abs(theta[j])});
          if (std::abs(theta[j] - c) <= radius * scale) {
            member[j] = true;
            cluster.push_back(j);
          }
        }
      }
      Complex mean = 0.0;
      for (const std::size_t j : cluster) mean += theta[j];
      mean /= static_cast<double>(cluster.size());
      const Complex mean_mu = to_mu({mean}, result.shift).front();
      double spread = 0.0, reach = 0.0;
      for (const std::size_t j : cluster) {
        spread = std::max(spread, std::abs(result.mu[j] - mean_mu));
        reach = std::max(reach, std::abs(result.mu[j]));
      }
      std::vector<Complex> candidates;
      if (cluster.size() > 1) candidates.push_back(mean_mu);
      // Y singular makes zero an exact eigenvalue.
      if (reach <= std::max(10.0 * spread, radius)) candidates.push_back(0.0);
      bool fixed = false;
      for (const Complex mu : candidates) {
        const double r = pencil_residual(p, mu);
        if (r <= tol) {
          for (const std::size_t j : cluster) {
            result.mu[j] = mu;
            residuals[j] = r;
          }
          fixed = true;
          break;
        }
      }
      if (fixed) break;
    }
  }

  std::vector<Complex> sorted = result.mu;
  sort_eigenvalues(sorted);
  // Carry residuals along with the sorted values.
  std::vector<bool> used(result.mu.size(), false);
  result.residuals.clear();
  for (const Complex mu : sorted) {
    for (std::size_t j = 0; j < result.mu.size(); ++j) {
      if (!used[j] && result.mu[j] == mu) {
        used[j] = true;
        result.residuals.push_back(residuals[j]);
        break;
      }
    }
  }
  result.mu = std::move(sorted);

  double worst = 0.0;
  for (const double r : result.residuals) {
    if (!(r <= worst)) worst = r;
  }
  if (!(worst <= tol)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "eigenvalue residual %.3e exceeds tolerance %.3e", worst, tol);
    throw SolverError(buf);
  }
  return result;
}

AllEigenvalues all_generalized_eigenvalues_dense(const Pencil& p) {
  DenseSpectrum spec = dense_spectrum(p);
  AllEigenvalues out;
  out.infinite_count = spec.deflated;
  std::vector<Complex> nonzero;
  const double threshold = 1e-10 * spec.wnorm;
  for (const Complex t : spec.theta) {
    if (std::abs(t) <= threshold) {
      ++out.infinite_count;
    } else {
      nonzero.push_back(t);
    }
  }
  out.finite = to_mu(nonzero, spec.tau);
  sort_eigenvalues(out.finite);
  return out;
}

}  // namespace fracstab
