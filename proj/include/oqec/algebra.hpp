#ifndef OQEC_ALGEBRA_HPP
#define OQEC_ALGEBRA_HPP

#include <vector>

#include "oqec/matkit.hpp"

namespace oqec {

/// Hilbert-Schmidt orthonormal basis of a subspace of B(H), with closure
/// flags. An algebra in the strict sense has both flags set.
struct AlgebraBasis {
  Eigen::Index dim = 0;  // ambient d
  std::vector<ComplexMatrix> basis;
  bool selfadjoint_closed = false;
  bool multiplicatively_closed = false;

  Eigen::Index size() const { return static_cast<Eigen::Index>(basis.size()); }
};

using OperatorSpace = AlgebraBasis;

/// One summand of the decomposition into M_m (x) 1_n blocks.
struct Block {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  /// d x (m*n) isometry; column (k-1)*n + (l-1) carries |alpha_k> (x) |beta_l>.
  ComplexMatrix isometry;
  /// m x m array of d x d matrix units P_kl = |alpha_k><alpha_l| (x) 1_n,
  /// stored row-major (units[k*m + l]).
  std::vector<ComplexMatrix> matrix_units;

  const ComplexMatrix& unit(Eigen::Index k, Eigen::Index l) const {
    return matrix_units[static_cast<size_t>(k * m + l)];
  }
  /// P = sum_k P_kk, the projection onto the block.
  ComplexMatrix block_projector() const;
};

struct BlockStructure {
  Eigen::Index dim = 0;
  std::vector<Block> blocks;
  Eigen::Index complement_dim = 0;
};

/// Orthonormalize a set of matrices into an operator space, detecting the
/// closure flags.
OperatorSpace make_operator_space(const std::vector<ComplexMatrix>& mats,
                                  const Tolerance& tol = {});

/// Smallest unital dagger-closed, multiplicatively closed span containing the
/// generators. Iterates {adjoin adjoints, adjoin pairwise products,
/// orthonormalize} until the span dimension is stable; the identity is
/// adjoined explicitly.
AlgebraBasis generate_algebra(const std::vector<ComplexMatrix>& generators,
                              const Tolerance& tol = {});

/// Commutant of a set of matrices (adjoints are adjoined first, so the
/// result is a dagger-closed algebra).
AlgebraBasis commutant_of(const std::vector<ComplexMatrix>& mats, const Tolerance& tol = {});

/// Commutant of a dagger-closed span. Requires alg.selfadjoint_closed.
AlgebraBasis commutant(const AlgebraBasis& alg, const Tolerance& tol = {});

/// Intersection of alg with its commutant.
AlgebraBasis center(const AlgebraBasis& alg, const Tolerance& tol = {});

/// Numerical Wedderburn decomposition of a unital dagger-closed
/// multiplicatively closed algebra into blocks M_m (x) 1_n, with explicit
/// matrix units. Randomized spectral splitting is seeded for reproducibility;
/// on detected degeneracy the seeds seed+1 .. seed+4 are retried before
/// giving up with SynthesisError.
BlockStructure decompose_structure(const AlgebraBasis& alg, const Tolerance& tol = {},
                                   uint64_t seed = 0);

/// Gamma map of a block's matrix units: sum_kl P_kl sigma P_kl^dag. Lands in
/// 1^A (x) B(H^B) and equals 1^A (x) (Tr_A . P_A)(sigma) in block coordinates.
ComplexMatrix gamma_map(const Block& block, const ComplexMatrix& sigma);

/// Max violation of the matrix-unit identities over a block:
/// P_kl = P_kk P_kl P_ll, P_kl^dag = P_lk, P_kl P_l'k' = delta_ll' P_kk'.
double matrix_unit_residual(const Block& block);

/// Max over basis elements of || b - sum_J V_J (G_J (x) 1_n) V_J^dag ||_F,
/// the distance of the algebra from its reconstructed block form.
double reconstruction_residual(const AlgebraBasis& alg, const BlockStructure& bs);

}  // namespace oqec

#endif
