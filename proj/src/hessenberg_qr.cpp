#include "fracstab/hessenberg_qr.hpp"

#include <cmath>
#include <limits>

namespace fracstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Rotation G = [c s; -conj(s) c] with G [x; y] = [r; 0].
struct Givens {
  double c = 1.0;
  Complex s = 0.0;

  static Givens zeroing(Complex x, Complex y) {
    Givens g;
    if (y == Complex(0.0)) return g;
    if (x == Complex(0.0)) {
      g.c = 0.0;
      g.s = std::conj(y) / std::abs(y);
      return g;
    }
    const double ax = std::abs(x);
    const double norm = std::hypot(ax, std::abs(y));
    g.c = ax / norm;
    g.s = (x / ax) * std::conj(y) / norm;
    return g;
  }

  void apply_left(Matrix& H, Eigen::Index k, Eigen::Index col_begin, Eigen::Index col_end) const {
    for (Eigen::Index j = col_begin; j <= col_end; ++j) {
      const Complex a = H(k, j);
      const Complex b = H(k + 1, j);
      H(k, j) = c * a + s * b;
      H(k + 1, j) = -std::conj(s) * a + c * b;
    }
  }

  // H <- H G^H on columns k, k+1.
  void apply_right(Matrix& H, Eigen::Index k, Eigen::Index row_begin, Eigen::Index row_end) const {
    for (Eigen::Index i = row_begin; i <= row_end; ++i) {
      const Complex a = H(i, k);
      const Complex b = H(i, k + 1);
      H(i, k) = a * c + b * std::conj(s);
      H(i, k + 1) = -a * s + b * c;
    }
  }
};

Complex wilkinson_shift(const Matrix& H, Eigen::Index iu) {
  const Complex a = H(iu - 1, iu - 1);
  const Complex b = H(iu - 1, iu);
  const Complex c = H(iu, iu - 1);
  const Complex d = H(iu, iu);
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex l1 = mid + disc;
  const Complex l2 = mid - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

void balance(Matrix& M) {
  const Eigen::Index n = M.rows();
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += abs1(M(j, i));
        row += abs1(M(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      double g = row / radix;
      double f = 1.0;
      const double total = col + row;
      while (col < g) {
        f *= radix;
        col *= radix2;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix2;
      }
      if ((col + row) / f < 0.95 * total) {
        converged = false;
        M.row(i) /= f;
        M.col(i) *= f;
      }
    }
  }
}

Matrix hessenberg_reduce(Matrix M) {
  const Eigen::Index n = M.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Vector v = M.col(k).tail(m);
    const double xnorm = v.norm();
    if (xnorm == 0.0) continue;
    const Complex x0 = v(0);
    const Complex phase = x0 == Complex(0.0) ? Complex(1.0) : x0 / std::abs(x0);
    v(0) += phase * xnorm;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // P = I - 2 v v^H applied on both sides.
    M.bottomRows(m) -= 2.0 * v * (v.adjoint() * M.bottomRows(m));
    M.rightCols(m) -= 2.0 * (M.rightCols(m) * v) * v.adjoint();
    M(k + 1, k) = -phase * xnorm;
    M.col(k).tail(m - 1).setZero();
  }
  return M;
}

std::vector<Complex> hessenberg_eigenvalues(Matrix H) {
  const Eigen::Index n = H.rows();
  std::vector<Complex> eig(static_cast<std::size_t>(n));
  if (n == 0) return eig;

  const long max_iterations = 30L * std::max<Eigen::Index>(n, 10);
  long total = 0;
  int since_deflation = 0;
  Eigen::Index iu = n - 1;
  while (iu >= 0) {
    if (iu == 0) {
      eig[0] = H(0, 0);
      break;
    }
    Eigen::Index il = iu;
    for (; il > 0; --il) {
      double scale = abs1(H(il - 1, il - 1)) + abs1(H(il, il));
      if (scale == 0.0) scale = H.block(0, 0, iu + 1, iu + 1).cwiseAbs().maxCoeff();
      if (abs1(H(il, il - 1)) <= kEps * scale) {
        H(il, il - 1) = 0.0;
        break;
      }
    }
    if (il == iu) {
      eig[static_cast<std::size_t>(iu)] = H(iu, iu);
      --iu;
      since_deflation = 0;
      continue;
    }
    if (++total > max_iterations) {
      throw SolverError("Hessenberg QR iteration did not converge (" + std::to_string(iu + 1) +
                        " eigenvalues outstanding)");
    }
    ++since_deflation;

    Complex shift;
    if (since_deflation % 10 == 0) {
      // Exceptional shift to break cycles.
      shift = H(iu, iu) + Complex(0.75, 0.4375) * abs1(H(iu, iu - 1));
    } else {
      shift = wilkinson_shift(H, iu);
    }

    for (Eigen::Index k = il; k < iu; ++k) {
      Complex x, y;
      if (k == il) {
        x = H(il, il) - shift;
        y = H(il + 1, il);
      } else {
        x = H(k, k - 1);
        y = H(k + 1, k - 1);
      }
      const Givens g = Givens::zeroing(x, y);
      g.apply_left(H, k, k == il ? il : k - 1, iu);
      if (k > il) H(k + 1, k - 1) = 0.0;
      g.apply_right(H, k, il, std::min(k + 2, iu));
    }
  }
  return eig;
}

std::vector<Complex> dense_eigenvalues(Matrix M) {
  if (M.rows() != M.cols()) throw InputError("dense_eigenvalues: matrix must be square");
  if (!M.allFinite()) throw SolverError("dense_eigenvalues: matrix has non-finite entries");
  balance(M);
  return hessenberg_eigenvalues(hessenberg_reduce(std::move(M)));
}

}  // namespace fracstab
