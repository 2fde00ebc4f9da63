#include "oqec/uns.hpp"

#include <algorithm>

namespace oqec {

UNSReport uns_algebra(const QuantumChannel& ch, const ComplexMatrix& U, const Tolerance& tol,
                      uint64_t seed) {
  if (U.rows() != ch.dim() || U.cols() != ch.dim())
    throw DimensionError("uns_algebra: unitary dimension disagrees with channel");
  if (!is_unitary(U, tol)) throw InvalidInputError("uns_algebra: U is not unitary within tolerance");
  ChannelReport report = validate(ch.kraus(), tol);
  if (!report.unital)
    throw NotUnitalError("uns_algebra: the commutant characterization requires a unital channel",
                         report.unital_residual);

  std::vector<ComplexMatrix> rotated;
  for (const auto& e : ch.kraus()) rotated.push_back(U.adjoint() * e);

  UNSReport out;
  out.algebra = commutant_of(rotated, tol);
  out.structure = decompose_structure(out.algebra, tol, seed);
  for (const auto& sigma : out.algebra.basis)
    out.evolve_residual =
        std::max(out.evolve_residual, (ch.apply(sigma) - U * sigma * U.adjoint()).norm());
  return out;
}

bool verify_uns(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                const ComplexMatrix& U, const Tolerance& tol) {
  if (U.rows() != ch.dim() || U.cols() != ch.dim() || ch.dim() != dec.dim())
    throw DimensionError("verify_uns: dims disagree");
  if (!is_unitary(U, tol)) throw InvalidInputError("verify_uns: U is not unitary within tolerance");
  const Eigen::Index m = dec.m(), n = dec.n();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      ComplexMatrix eA = ComplexMatrix::Zero(m, m);
      eA(i, j) = 1.0;
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) {
          ComplexMatrix eB = ComplexMatrix::Zero(n, n);
          eB(k, l) = 1.0;
          ComplexMatrix rho = U.adjoint() * ch.apply(dec.embed(eA, eB)) * U;
          ComplexMatrix lhs = partial_trace_A(dec.compress(rho), m, n);
          ComplexMatrix rhs = (i == j) ? eB : ComplexMatrix(ComplexMatrix::Zero(n, n));
          if ((lhs - rhs).norm() > tol.atol) return false;
        }
    }
  return true;
}

}  // namespace oqec
