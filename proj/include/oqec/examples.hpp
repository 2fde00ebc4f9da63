#ifndef OQEC_EXAMPLES_HPP
#define OQEC_EXAMPLES_HPP

#include <map>
#include <string>
#include <vector>

#include "oqec/oqec.hpp"

namespace oqec {

/// A worked example shipped with the library: a channel plus the
/// decompositions (and recovery, where one is known) that make it
/// interesting.
struct ExampleFixture {
  std::string name;
  std::map<std::string, double> parameters;
  QuantumChannel channel;
  std::vector<SubsystemDecomposition> decompositions;
  std::vector<RecoveryChannel> recoveries;
  std::vector<ComplexMatrix> unitaries;
};

/// Two-qubit channel F_i (x) 1_2 with F_0 = diag(sqrt(g), sqrt(1-g)),
/// F_1 = antidiag(sqrt(g), sqrt(1-g)). The B factor of the standard split is
/// noiseless for every g in [0, 1].
ExampleFixture example1(double gamma);

/// Two-qubit non-unital channel with two noiseless subsystems: the subspace
/// span{|01>, |10>} (not supported by the noise commutant) and a Bell-like
/// m = n = 2 subsystem (supported by it). Requires 0 < q < 1/2.
ExampleFixture example2(double q);

/// Partial-isometry channel on C^4 correctable in the subsystem sense but
/// not by any standard recovery on the same code. The second basis defaults
/// to a seeded random orthonormal one.
ExampleFixture example_oqec(uint64_t seed = 0);

/// Same, with an explicitly supplied second orthonormal basis (columns
/// |a_1>, |b_1>, |a_2>, |b_2>).
ExampleFixture example_oqec_with_basis(const ComplexMatrix& second_basis);

/// Two-qubit dephasing channel {Z_1, Z_2} / sqrt(2) together with the
/// sign-flip unitary whose UNS algebra carries a correctable qubit.
ExampleFixture example_uns();

}  // namespace oqec

#endif
