#include "oqec/examples.hpp"

#include <cmath>

namespace oqec {

namespace {

ComplexMatrix ket(Eigen::Index d, Eigen::Index i) {
  ComplexMatrix v = ComplexMatrix::Zero(d, 1);
  v(i, 0) = 1.0;
  return v;
}

ComplexMatrix ketbra(const ComplexMatrix& u, const ComplexMatrix& v) {
  return u * v.adjoint();
}

}  // namespace

ExampleFixture example1(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw InvalidInputError("example1: gamma must lie in [0, 1]");
  const double rg = std::sqrt(gamma), rc = std::sqrt(1.0 - gamma);
  ComplexMatrix F0(2, 2), F1(2, 2);
  F0 << rg, 0, 0, rc;
  F1 << 0, rg, rc, 0;
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  QuantumChannel channel({tensor(F0, id2), tensor(F1, id2)});
  SubsystemDecomposition standard_split(4, 2, 2, ComplexMatrix::Identity(4, 4));
  return {"example1", {{"gamma", gamma}}, std::move(channel), {std::move(standard_split)}, {}, {}};
}

ExampleFixture example2(double q) {
  if (!(q > 0.0 && q < 0.5)) throw InvalidInputError("example2: q must lie in (0, 1/2)");
  const double alpha = std::sqrt(1.0 - 2.0 * q), beta = std::sqrt(q);
  const ComplexMatrix k00 = ket(4, 0), k01 = ket(4, 1), k10 = ket(4, 2), k11 = ket(4, 3);
  ComplexMatrix E0 = alpha * (ketbra(k00, k00) + ketbra(k11, k11)) + ketbra(k01, k01) +
                     ketbra(k10, k10);
  ComplexMatrix E1 = beta * (ketbra(k00, k00) + ketbra(k10, k00) + ketbra(k01, k11) +
                             ketbra(k11, k11));
  QuantumChannel channel({E0, E1});

  // B1: the subspace span{|01>, |10>} as an m = 1 noiseless sector.
  ComplexMatrix V1(4, 2);
  V1.col(0) = k01;
  V1.col(1) = k10;
  SubsystemDecomposition b1(4, 1, 2, std::move(V1));

  // B2: Bell-like product split, column order |a_k b_l> = (k-1)*2 + (l-1).
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix V2(4, 4);
  V2.col(0) = s * (k00 + k11);
  V2.col(1) = s * (k00 - k11);
  V2.col(2) = s * (k10 + k01);
  V2.col(3) = s * (k10 - k01);
  SubsystemDecomposition b2(4, 2, 2, std::move(V2));

  return {"example2", {{"q", q}}, std::move(channel), {std::move(b1), std::move(b2)}, {}, {}};
}

ExampleFixture example_oqec_with_basis(const ComplexMatrix& second_basis) {
  if (second_basis.rows() != 4 || second_basis.cols() != 4)
    throw DimensionError("example_oqec: second basis must be 4 x 4");
  if (!is_unitary(second_basis))
    throw InvalidInputError("example_oqec: second basis columns must be orthonormal");
  const double s = 1.0 / std::sqrt(2.0);
  // First basis {|a>, |b>, |a'>, |b'>} is computational; the second basis
  // {|a_1>, |b_1>, |a_2>, |b_2>} arrives as columns.
  const ComplexMatrix a = ket(4, 0), b = ket(4, 1), ap = ket(4, 2), bp = ket(4, 3);
  const ComplexMatrix a1 = second_basis.col(0), b1 = second_basis.col(1);
  const ComplexMatrix a2 = second_basis.col(2), b2 = second_basis.col(3);

  // Partial isometries U_i P_1 and U_i' P_2 mapping the two code sectors
  // onto the syndrome sectors Q_i.
  const ComplexMatrix V11 = ketbra(a1, a) + ketbra(b1, b);    // U_1 P_1
  const ComplexMatrix V12 = ketbra(a1, ap) + ketbra(b1, bp);  // U_1' P_2
  const ComplexMatrix V21 = ketbra(a2, a) + ketbra(b2, b);    // U_2 P_1
  const ComplexMatrix V22 = ketbra(a2, ap) + ketbra(b2, bp);  // U_2' P_2

  QuantumChannel channel({s * (V11 + V12), s * (V21 - V22)});

  SubsystemDecomposition dec(4, 2, 2, ComplexMatrix::Identity(4, 4));

  const ComplexMatrix Q1 = a1 * a1.adjoint() + b1 * b1.adjoint();
  const ComplexMatrix Q2 = a2 * a2.adjoint() + b2 * b2.adjoint();
  RecoveryChannel recovery{QuantumChannel({s * V11.adjoint() * Q1, s * V12.adjoint() * Q1,
                                           s * V21.adjoint() * Q2, s * V22.adjoint() * Q2}),
                           "measurement of Q_j followed by the restricted reversals"};

  return {"oqec", {}, std::move(channel), {std::move(dec)}, {std::move(recovery)}, {}};
}

ExampleFixture example_oqec(uint64_t seed) {
  Rng rng(seed);
  ExampleFixture fixture = example_oqec_with_basis(random_unitary(4, rng));
  fixture.parameters["seed"] = double(seed);
  return fixture;
}

ExampleFixture example_uns() {
  ComplexMatrix Z(2, 2);
  Z << 1, 0, 0, -1;
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  // The raw pair {Z_1, Z_2} sums to 2*1, so the Kraus set is normalized by
  // 1/sqrt(2); commutants and the UNS statements are unchanged.
  QuantumChannel channel({s * tensor(Z, id2), s * tensor(id2, Z)});

  ComplexMatrix U = ComplexMatrix::Identity(4, 4);
  U(3, 3) = -1.0;  // |11> -> -|11>

  // The information-bearing M_2 sector of the UNS algebra: span{|00>, |11>}.
  ComplexMatrix V(4, 2);
  V.col(0) = ket(4, 0);
  V.col(1) = ket(4, 3);
  SubsystemDecomposition sector(4, 1, 2, std::move(V));

  return {"uns", {}, std::move(channel), {std::move(sector)}, {}, {U}};
}

}  // namespace oqec
