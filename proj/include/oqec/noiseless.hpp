#ifndef OQEC_NOISELESS_HPP
#define OQEC_NOISELESS_HPP

#include <vector>

#include "oqec/algebra.hpp"
#include "oqec/channel.hpp"

namespace oqec {

/// A fixed splitting H = (H^A (x) H^B) + K given by a d x (m*n) isometry.
/// Column (k-1)*n + (l-1) carries |alpha_k> (x) |beta_l>, matching the
/// left-factor-major tensor convention.
class SubsystemDecomposition {
public:
  SubsystemDecomposition(Eigen::Index dim, Eigen::Index m, Eigen::Index n,
                         ComplexMatrix isometry, const Tolerance& tol = {});

  Eigen::Index dim() const { return dim_; }
  Eigen::Index m() const { return m_; }
  Eigen::Index n() const { return n_; }
  const ComplexMatrix& isometry() const { return isometry_; }

  /// d x n slice mapping |beta_l> to |alpha_k> (x) |beta_l>.
  ComplexMatrix sector(Eigen::Index k) const { return isometry_.middleCols(k * n_, n_); }

  /// Matrix unit P_kl = |alpha_k><alpha_l| (x) 1^B as a d x d operator.
  ComplexMatrix unit(Eigen::Index k, Eigen::Index l) const;

  /// P_A = sum_k P_kk, the projection onto H^A (x) H^B.
  const ComplexMatrix& projector() const { return projector_; }

  /// Embed an m x m (x) n x n product operator into H.
  ComplexMatrix embed(const ComplexMatrix& sigmaA, const ComplexMatrix& sigmaB) const;

  /// Compress a d x d operator to (m*n) x (m*n) block coordinates.
  ComplexMatrix compress(const ComplexMatrix& X) const;

private:
  Eigen::Index dim_, m_, n_;
  ComplexMatrix isometry_;
  ComplexMatrix projector_;
};

/// Swap the roles of the A and B factors (same subspace, transposed labels).
SubsystemDecomposition swap_factors(const SubsystemDecomposition& dec, const Tolerance& tol = {});

struct NSReport {
  bool noiseless = false;
  /// lambda(a, k, l) with P_kk E_a P_ll = lambda_{akl} P_kl; indexed
  /// [a][k*m + l].
  std::vector<std::vector<Complex>> lambda;
  double cond1_residual = 0.0;  // max ||P_kk E_a P_ll - lambda_{akl} P_kl||_F
  double cond2_residual = 0.0;  // max ||E_a P_A - P_A E_a P_A||_F
};

/// Orthonormal basis of the fixed-point set Fix(E), the eigenvalue-1
/// eigenspace of the channel's superoperator.
OperatorSpace fixed_points(const QuantumChannel& ch, const Tolerance& tol = {});

/// Scalar test of the noiseless-subsystem conditions
/// P_kk E_a P_ll = lambda_{akl} P_kl and E_a P_A = P_A E_a P_A.
NSReport verify_ns(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                   const Tolerance& tol = {});

/// Independent semantic check: E(1^A (x) sigma^B) factors as
/// tau^A (x) sigma^B with tau^A independent of the probe.
bool verify_ns_semantic(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                        const Tolerance& tol = {});

/// tau^A with E(sigma^A (x) sigma^B) = tau^A (x) sigma^B, recovered against
/// a unit-trace probe sigma^B. Throws NotCorrectableError when the
/// decomposition is not noiseless for the channel.
ComplexMatrix extract_tau(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                          const ComplexMatrix& sigmaA, const ComplexMatrix& sigmaB,
                          const Tolerance& tol = {});

/// Same with the default probe |beta_1><beta_1|, cross-checked against all
/// basis probes.
ComplexMatrix extract_tau(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                          const ComplexMatrix& sigmaA, const Tolerance& tol = {});

struct NSSearch {
  /// Blocks with n >= 2: genuinely quantum noiseless subsystems.
  std::vector<SubsystemDecomposition> noiseless;
  /// Blocks with n == 1: classical (abelian) sectors, reported separately.
  std::vector<SubsystemDecomposition> classical;
  BlockStructure structure;  // of the interaction algebra
};

/// Noiseless-subsystem discovery for unital channels via the block structure
/// of the interaction algebra. Throws NotUnitalError on non-unital input
/// (use verify_ns / the UNS route there).
NSSearch find_ns_unital(const QuantumChannel& ch, const Tolerance& tol = {}, uint64_t seed = 0);

}  // namespace oqec

#endif
