#pragma once

// Dense nonsymmetric eigenvalues: balancing, Householder reduction to upper
// Hessenberg form, implicit single-shift complex QR with Wilkinson shifts.

#include <vector>

#include "fracstab/common.hpp"

namespace fracstab {

/// Parlett-Reinsch balancing with powers of two; eigenvalues are unchanged.
void balance(Matrix& M);

/// Unitary similarity to upper Hessenberg form (entries below the first
/// subdiagonal are set to exact zero).
Matrix hessenberg_reduce(Matrix M);

/// Eigenvalues of an upper Hessenberg matrix. Throws SolverError if the QR
/// iteration fails to deflate within 30 sweeps per eigenvalue.
std::vector<Complex> hessenberg_eigenvalues(Matrix H);

/// All eigenvalues of a general square matrix, with multiplicity.
std::vector<Complex> dense_eigenvalues(Matrix M);

}  // namespace fracstab
