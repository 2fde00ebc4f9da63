#ifndef OQEC_MATKIT_HPP
#define OQEC_MATKIT_HPP

#include <random>
#include <vector>

#include "oqec/types.hpp"

namespace oqec {

// ---------------------------------------------------------------------------
// Basic algebra
// ---------------------------------------------------------------------------

/// Checked matrix product; throws DimensionError when A.cols != B.rows.
ComplexMatrix multiply(const ComplexMatrix& A, const ComplexMatrix& B);

/// Kronecker product with the left-factor-major index convention:
/// row index of A (x) B is i_A * rows(B) + i_B. Every module uses this
/// single convention.
ComplexMatrix tensor(const ComplexMatrix& A, const ComplexMatrix& B);

/// Trace over the first tensor factor of a (dimA*dimB) square matrix.
ComplexMatrix partial_trace_A(const ComplexMatrix& M, Eigen::Index dimA, Eigen::Index dimB);

/// Trace over the second tensor factor.
ComplexMatrix partial_trace_B(const ComplexMatrix& M, Eigen::Index dimA, Eigen::Index dimB);

/// Hilbert-Schmidt inner product tr(A^dag B), antilinear in the first slot.
Complex hs_inner(const ComplexMatrix& A, const ComplexMatrix& B);

double fro_norm(const ComplexMatrix& A);

bool is_hermitian(const ComplexMatrix& M, const Tolerance& tol = {});
bool is_projector(const ComplexMatrix& P, const Tolerance& tol = {});
bool is_unitary(const ComplexMatrix& U, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

struct HermitianEig {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, M = V diag(w) V^dag
};

/// Eigendecomposition of a Hermitian matrix. Throws InvalidInputError when
/// ||M - M^dag||_F exceeds atol.
HermitianEig eig_hermitian(const ComplexMatrix& M, const Tolerance& tol = {});

/// Number of singular values above rank_rtol * sigma_max.
Eigen::Index numerical_rank(const ComplexMatrix& M, const Tolerance& tol = {});

/// Orthonormal basis (columns) of the numerical null space of M.
ComplexMatrix null_space(const ComplexMatrix& M, const Tolerance& tol = {});

/// Partial isometry W from the polar factorization M = W (M^dag M)^{1/2},
/// with singular values below rank_rtol * sigma_max dropped. W^dag W is the
/// projector onto the row space of M.
ComplexMatrix polar_isometry(const ComplexMatrix& M, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Operator-space utilities (matrices as vectors under the HS inner product)
// ---------------------------------------------------------------------------

/// Residual of X after projecting onto the span of an HS-orthonormal basis.
double span_residual(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& X);

/// True when the projection residual is at most atol * max(1, ||X||_F).
bool in_span(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& X,
             const Tolerance& tol = {});

/// HS-orthonormal basis of span(mats) by modified Gram-Schmidt with one
/// re-orthogonalization pass. Near-dependent inputs are dropped.
std::vector<ComplexMatrix> orthonormalize(const std::vector<ComplexMatrix>& mats,
                                          const Tolerance& tol = {});

/// Symmetric span distance: the largest projection residual of one basis
/// against the other's span, in both directions. Zero iff equal spans.
double span_distance(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b);

/// Column-major flattening of a matrix and its inverse.
ComplexVector vec(const ComplexMatrix& M);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

// ---------------------------------------------------------------------------
// Seeded random constructions
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian.
ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

ComplexMatrix random_hermitian(Eigen::Index d, Rng& rng);

/// Haar-like unitary from the QR factorization of a Gaussian matrix.
ComplexMatrix random_unitary(Eigen::Index d, Rng& rng);

/// Rank-r orthogonal projector with Haar-random range.
ComplexMatrix random_projector(Eigen::Index d, Eigen::Index rank, Rng& rng);

/// d x k isometry (orthonormal columns), k <= d.
ComplexMatrix random_isometry(Eigen::Index d, Eigen::Index k, Rng& rng);

}  // namespace oqec

#endif
