#pragma once

#include <cstddef>
#include <span>

#include "treekta/matrix.hpp"

namespace treekta {

/// Eigenpairs of a symmetric matrix, eigenvalues descending. Column i of
/// `vectors` pairs with values[i] and has its largest-magnitude entry positive.
struct EigenDecomposition {
  Vector values;
  Matrix vectors;
};

/// L = left * diag(singular_values) * rightᵀ, singular values descending.
/// Column signs follow the eigenvector convention on the left vectors.
struct ThinSvd {
  Matrix left;
  Vector singular_values;
  Matrix right;
};

/// Which eigensolver backs a spectral computation.
enum class EigenRoute {
  /// Cyclic Jacobi, full decomposition, then truncation.
  jacobi,
  /// LAPACK dsyevr computing only the requested leading pairs.
  lapack_leading,
};

/// Full decomposition by cyclic Jacobi rotations; stops once the off-diagonal
/// Frobenius norm drops below 1e-12 ||A||_F or after 100 sweeps.
/// Throws InvalidArgument unless A is symmetric within 1e-10.
EigenDecomposition sym_eig(const Matrix& a);

/// The k largest eigenpairs, same ordering and sign convention as sym_eig.
EigenDecomposition sym_eig_leading(const Matrix& a, std::size_t k,
                                   EigenRoute route = EigenRoute::lapack_leading);

/// Thin SVD of an n x r matrix (n >= r) from the eigendecomposition of LᵀL.
/// Left vectors of (numerically) zero singular values are completed to an
/// orthonormal set.
ThinSvd thin_svd(const Matrix& l);

/// Leading k singular triplets; with lapack_leading only k eigenpairs of LᵀL
/// are computed.
ThinSvd thin_svd_leading(const Matrix& l, std::size_t k, EigenRoute route);

/// Flips columns so each one's largest-magnitude entry is positive (first one
/// wins a tie). `companion`, when given, receives the same flips.
void normalize_column_signs(Matrix& vectors, Matrix* companion = nullptr);

/// Lower Cholesky factor of a + ridge*I. Throws NotPositiveDefinite.
Matrix cholesky(const Matrix& a, double ridge = 0.0);

/// Solves (a + ridge*I) x = b by Cholesky. Throws NotPositiveDefinite when the
/// factorization breaks down.
Vector solve_spd(const Matrix& a, double ridge, std::span<const double> b);

bool is_symmetric(const Matrix& a, double tolerance);

}  // namespace treekta
