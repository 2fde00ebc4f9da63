#ifndef OQEC_OQEC_HPP
#define OQEC_OQEC_HPP

#include <string>
#include <vector>

#include "oqec/noiseless.hpp"

namespace oqec {

struct KLReport {
  bool satisfied = false;
  ComplexMatrix lambda;    // lambda_ab with P E_a^dag E_b P = lambda_ab P
  double residual = 0.0;   // max_ab ||P E_a^dag E_b P - lambda_ab P||_F
  double lambda_psd_mineig = 0.0;  // reported, not gated on
};

struct OQECReport {
  bool correctable = false;
  /// lambda(a, b, k, l) with P_kk E_a^dag E_b P_ll = lambda_{abkl} P_kl;
  /// indexed [a * K + b][k * m + l] for K Kraus operators.
  std::vector<std::vector<Complex>> lambda4;
  double residual = 0.0;
};

struct RecoveryChannel {
  QuantumChannel channel;
  std::string provenance;  // which synthesis path produced it
};

/// Standard-model error correction test P E_a^dag E_b P = lambda_ab P.
/// Throws InvalidInputError when P is not a projector within tolerance.
KLReport kl_check(const QuantumChannel& ch, const ComplexMatrix& P, const Tolerance& tol = {});

/// (R . E)(sigma) = sigma on an operator basis of P B(H) P.
bool verify_standard_triple(const QuantumChannel& R, const QuantumChannel& E,
                            const ComplexMatrix& P, const Tolerance& tol = {});

/// Testable correctability condition P_kk E_a^dag E_b P_ll = lambda_{abkl} P_kl.
OQECReport oqec_check(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                      const Tolerance& tol = {});

/// Measurement-plus-reversal recovery for a standard code: diagonalize
/// lambda, polar-factor the remixed errors on the code, complete with the
/// leftover projector. Throws NotCorrectableError when the KL test fails.
RecoveryChannel synthesize_standard_recovery(const QuantumChannel& ch, const ComplexMatrix& P,
                                             const Tolerance& tol = {});

/// Recovery for a correctable subsystem: correct the induced code channel
/// {E_a P |alpha_k> / sqrt(m)} with a standard recovery, then re-inflate the
/// A side to the maximally mixed state. Throws NotCorrectableError when the
/// subsystem test fails.
RecoveryChannel synthesize_oqec_recovery(const QuantumChannel& ch,
                                         const SubsystemDecomposition& dec,
                                         const Tolerance& tol = {});

/// Definition of a correctable triple: (Tr_A . P_A . R . E)(sigma) = Tr_A(sigma)
/// on a spanning set of the semigroup of product operators.
bool verify_correctable_triple(const QuantumChannel& R, const QuantumChannel& E,
                               const SubsystemDecomposition& dec, const Tolerance& tol = {});

/// Reduction of a correctable triple to a standard one on the code P_kk:
/// recovery P_k . R with P_k(.) = sum_l P_kl (.) P_kl^dag, completed on the
/// complement. Returns the reduced recovery and the code projector.
std::pair<QuantumChannel, ComplexMatrix> reduce_to_standard(const QuantumChannel& R,
                                                            const QuantumChannel& E,
                                                            const SubsystemDecomposition& dec,
                                                            Eigen::Index k,
                                                            const Tolerance& tol = {});

}  // namespace oqec

#endif
