#ifndef OQEC_CHANNEL_HPP
#define OQEC_CHANNEL_HPP

#include <vector>

#include "oqec/matkit.hpp"

namespace oqec {

struct ChannelReport {
  bool trace_preserving = false;
  double tp_residual = 0.0;  // ||sum E^dag E - I||_F
  bool unital = false;
  double unital_residual = 0.0;  // ||sum E E^dag - I||_F
  int kraus_count = 0;
};

/// Completely positive trace-preserving map in operator-sum form.
/// Immutable after construction; construction enforces trace preservation
/// within atol.
class QuantumChannel {
public:
  QuantumChannel(std::vector<ComplexMatrix> kraus, const Tolerance& tol = {});

  Eigen::Index dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// sum_a E_a sigma E_a^dag.
  ComplexMatrix apply(const ComplexMatrix& sigma) const;

  /// Dual (adjoint) map sum_a E_a^dag sigma E_a; unital iff the channel is TP.
  ComplexMatrix apply_dual(const ComplexMatrix& sigma) const;

private:
  Eigen::Index dim_;
  std::vector<ComplexMatrix> kraus_;
};

/// Structural report on a Kraus set; does not throw on TP violation.
ChannelReport validate(const std::vector<ComplexMatrix>& kraus, const Tolerance& tol = {});

ChannelReport validate(const QuantumChannel& ch, const Tolerance& tol = {});

/// Kraus set {R_b E_a} over all pairs.
QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);

QuantumChannel identity_channel(Eigen::Index d);
QuantumChannel unitary_channel(const ComplexMatrix& U, const Tolerance& tol = {});

/// Unnormalized system-first Choi matrix J = sum_ij |i><j| (x) E(|i><j|).
ComplexMatrix choi(const QuantumChannel& ch);

/// Kraus operators from the scaled eigenvectors of a PSD Choi matrix,
/// discarding eigenvalues below rank_rtol * lambda_max.
QuantumChannel kraus_from_choi(const ComplexMatrix& J, Eigen::Index dim,
                               const Tolerance& tol = {});

/// Frobenius norm of the Choi difference; zero iff equal as maps.
double channel_distance(const QuantumChannel& a, const QuantumChannel& b);

/// The channel as a d^2 x d^2 matrix acting on column-major vectorized
/// operators: vec(E(sigma)) = S vec(sigma).
ComplexMatrix superoperator(const QuantumChannel& ch);

/// Random TP channel with k Kraus operators (Gaussian draw, then the whole
/// set is right-normalized).
QuantumChannel random_channel(Eigen::Index d, int k, Rng& rng);

/// Mixture of k Haar-like unitaries with a random probability vector;
/// unital and TP by construction.
QuantumChannel random_unital_mixture(Eigen::Index d, int k, Rng& rng);

}  // namespace oqec

#endif
