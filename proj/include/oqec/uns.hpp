#ifndef OQEC_UNS_HPP
#define OQEC_UNS_HPP

#include "oqec/oqec.hpp"

namespace oqec {

struct UNSReport {
  AlgebraBasis algebra;     // {U^dag E_a}' (with adjoints adjoined)
  BlockStructure structure; // its block decomposition; info-bearing sectors
  double evolve_residual = 0.0;  // max over basis sigma of ||E(sigma) - U sigma U^dag||_F
};

/// Unitarily-noiseless-subsystem algebra of a unital channel: the commutant
/// of {U^dag E_a, (U^dag E_a)^dag}. Every element evolves by conjugation
/// with U, so each block is corrected by applying U^dag (.) U.
/// Throws InvalidInputError for non-unitary U and NotUnitalError for
/// non-unital channels.
UNSReport uns_algebra(const QuantumChannel& ch, const ComplexMatrix& U, const Tolerance& tol = {},
                      uint64_t seed = 0);

/// General (non-unital) verification: (Tr_A . P_A . U^{-1} . E)(sigma) =
/// Tr_A(sigma) on a spanning set of the product semigroup, where
/// U^{-1}(.) = U^dag (.) U.
bool verify_uns(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                const ComplexMatrix& U, const Tolerance& tol = {});

}  // namespace oqec

#endif
