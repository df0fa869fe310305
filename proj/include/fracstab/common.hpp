#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fracstab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: order vectors, matrices, problem files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to deliver a certified result.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Principal argument in (-pi, pi]. A negative real number with a signed
/// zero imaginary part is mapped to +pi.
inline double principal_arg(Complex z) {
  return std::atan2(z.imag() == 0.0 ? 0.0 : z.imag(), z.real());
}

/// Principal-branch power |z|^beta exp(i beta arg z), with 0^beta = 0 for
/// beta > 0.
inline Complex principal_pow(Complex z, double beta) {
  if (z == Complex(0.0, 0.0)) {
    return beta == 0.0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  }
  return std::polar(std::pow(std::abs(z), beta), beta * principal_arg(z));
}

}  // namespace fracstab
