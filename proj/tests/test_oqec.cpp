#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oqec/examples.hpp"
#include "oqec/oqec.hpp"

using namespace oqec;

namespace {

ComplexMatrix pauli_z() {
  ComplexMatrix Z(2, 2);
  Z << 1, 0, 0, -1;
  return Z;
}

ComplexMatrix pauli_x() {
  ComplexMatrix X(2, 2);
  X << 0, 1, 1, 0;
  return X;
}

struct Instance {
  QuantumChannel ch;
  SubsystemDecomposition dec;
};

// Correctable construction: a channel acting on the A factor of a hidden
// product split, arbitrary on the complement.
Instance random_correctable(Eigen::Index d, Eigen::Index m, Eigen::Index n, int K, Rng& rng) {
  ComplexMatrix basis = random_unitary(d, rng);
  ComplexMatrix V = basis.leftCols(m * n);
  ComplexMatrix W = basis.rightCols(d - m * n);
  QuantumChannel onA = random_channel(m, K, rng);
  std::vector<ComplexMatrix> kraus;
  for (int a = 0; a < K; ++a) {
    ComplexMatrix E = V * tensor(onA.kraus()[a], ComplexMatrix::Identity(n, n)) * V.adjoint();
    // Keep the set trace preserving: route the complement through the first
    // operator only.
    if (d > m * n && a == 0) E += W * W.adjoint();
    kraus.push_back(std::move(E));
  }
  return {QuantumChannel(std::move(kraus)), SubsystemDecomposition(d, m, n, V)};
}

// lambda'_{abkl} = sum conj(u_kk') u_ll' conj(w_aa') w_bb' lambda_{a'b'k'l'}
// for the Kraus remix F_a = sum_b w_ab E_b and A-basis change
// |alpha'_k> = sum_l u_kl |alpha_l>.
std::vector<std::vector<Complex>> transform_lambda(const std::vector<std::vector<Complex>>& lam,
                                                   const ComplexMatrix& w,
                                                   const ComplexMatrix& u) {
  const Eigen::Index K = w.rows(), m = u.rows();
  std::vector<std::vector<Complex>> out(static_cast<size_t>(K) * K,
                                        std::vector<Complex>(m * m, Complex(0, 0)));
  for (Eigen::Index a = 0; a < K; ++a)
    for (Eigen::Index b = 0; b < K; ++b)
      for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < m; ++l) {
          Complex acc = 0.0;
          for (Eigen::Index ap = 0; ap < K; ++ap)
            for (Eigen::Index bp = 0; bp < K; ++bp)
              for (Eigen::Index kp = 0; kp < m; ++kp)
                for (Eigen::Index lp = 0; lp < m; ++lp)
                  acc += std::conj(u(k, kp)) * u(l, lp) * std::conj(w(a, ap)) * w(b, bp) *
                         lam[static_cast<size_t>(ap) * K + bp][kp * m + lp];
          out[static_cast<size_t>(a) * K + b][k * m + l] = acc;
        }
  return out;
}

Instance transform_instance(const Instance& in, const ComplexMatrix& w, const ComplexMatrix& u,
                            Eigen::Index n) {
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index a = 0; a < w.rows(); ++a) {
    ComplexMatrix F = ComplexMatrix::Zero(in.ch.dim(), in.ch.dim());
    for (Eigen::Index b = 0; b < w.cols(); ++b) F += w(a, b) * in.ch.kraus()[b];
    kraus.push_back(std::move(F));
  }
  ComplexMatrix V2 = in.dec.isometry() * tensor(u.transpose(), ComplexMatrix::Identity(n, n));
  return {QuantumChannel(std::move(kraus)),
          SubsystemDecomposition(in.dec.dim(), in.dec.m(), n, std::move(V2))};
}

}  // namespace

TEST_CASE("kl_check basics") {
  Rng rng(1);
  ComplexMatrix P = random_projector(4, 2, rng);
  KLReport id = kl_check(identity_channel(4), P);
  CHECK(id.satisfied);
  REQUIRE(id.lambda.rows() == 1);
  CHECK(std::abs(id.lambda(0, 0) - Complex(1, 0)) < 1e-12);

  ExampleFixture ex3 = example_oqec(0);
  ComplexMatrix P1 = ex3.decompositions[0].unit(0, 0);
  KLReport r3 = kl_check(ex3.channel, P1);
  CHECK(r3.satisfied);
  CHECK(std::abs(r3.lambda(0, 0) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(r3.lambda(1, 1) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(r3.lambda(0, 1)) < 1e-12);
  CHECK(r3.lambda_psd_mineig > -1e-12);

  CHECK_THROWS_AS(kl_check(identity_channel(4), random_matrix(4, 4, rng)), InvalidInputError);
}

TEST_CASE("three-qubit bit-flip code passes KL and round-trips") {
  const Eigen::Index d = 8;
  ComplexMatrix P = ComplexMatrix::Zero(d, d);
  P(0, 0) = P(7, 7) = 1.0;  // span{|000>, |111>}
  ComplexMatrix X = pauli_x(), I2 = ComplexMatrix::Identity(2, 2);
  const double p0 = 0.85, p = 0.05;
  std::vector<ComplexMatrix> kraus = {
      std::sqrt(p0) * ComplexMatrix::Identity(d, d),
      std::sqrt(p) * tensor(tensor(X, I2), I2),
      std::sqrt(p) * tensor(tensor(I2, X), I2),
      std::sqrt(p) * tensor(tensor(I2, I2), X),
  };
  QuantumChannel ch(std::move(kraus));
  KLReport kl = kl_check(ch, P);
  CHECK(kl.satisfied);
  CHECK(std::abs(kl.lambda(0, 0) - Complex(p0, 0)) < 1e-12);

  RecoveryChannel rec = synthesize_standard_recovery(ch, P);
  CHECK(verify_standard_triple(rec.channel, ch, P));
  // Explicit round trip over the four code-basis operators.
  for (Eigen::Index i : {0, 7})
    for (Eigen::Index j : {0, 7}) {
      ComplexMatrix sigma = ComplexMatrix::Zero(d, d);
      sigma(i, j) = 1.0;
      CHECK((rec.channel.apply(ch.apply(sigma)) - sigma).norm() < 1e-9);
    }
}

TEST_CASE("verify_standard_triple") {
  Rng rng(2);
  ComplexMatrix P = random_projector(4, 2, rng);
  CHECK(verify_standard_triple(identity_channel(4), identity_channel(4), P));

  ComplexMatrix U = random_unitary(4, rng);
  CHECK(verify_standard_triple(unitary_channel(U.adjoint()), unitary_channel(U), P));
  CHECK_FALSE(verify_standard_triple(unitary_channel(U), unitary_channel(U), P));
}

TEST_CASE("oqec_check on the partial-isometry example") {
  ExampleFixture ex3 = example_oqec(0);
  OQECReport r = oqec_check(ex3.channel, ex3.decompositions[0]);
  CHECK(r.correctable);
  CHECK(r.residual < 1e-12);
  const Eigen::Index K = 2, m = 2;
  auto lam = [&](int a, int b, int k, int l) {
    return r.lambda4[static_cast<size_t>(a) * K + b][k * m + l];
  };
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < 2; ++k) CHECK(std::abs(lam(a, a, k, k) - Complex(0.5, 0)) < 1e-12);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      CHECK(std::abs(lam(0, 1, k, l)) < 1e-12);
      CHECK(std::abs(lam(1, 0, k, l)) < 1e-12);
    }
  CHECK(std::abs(lam(0, 0, 0, 1) - Complex(0.5, 0)) < 1e-12);   // P1 E1+E1 P2 = 1/2 P12
  CHECK(std::abs(lam(1, 1, 0, 1) - Complex(-0.5, 0)) < 1e-12);  // P1 E2+E2 P2 = -1/2 P12
  CHECK(std::abs(lam(0, 0, 1, 0) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(lam(1, 1, 1, 0) - Complex(-0.5, 0)) < 1e-12);
}

TEST_CASE("noiseless decompositions are correctable with identity recovery") {
  ExampleFixture ex2 = example2(0.25);
  for (const auto& dec : ex2.decompositions) {
    CHECK(oqec_check(ex2.channel, dec).correctable);
    CHECK(verify_correctable_triple(identity_channel(4), ex2.channel, dec));
  }
  ExampleFixture ex1 = example1(0.6);
  CHECK(oqec_check(ex1.channel, ex1.decompositions[0]).correctable);
}

TEST_CASE("generic decomposition against dephasing fails loudly") {
  Rng rng(3);
  const double s = 1.0 / std::sqrt(2.0);
  QuantumChannel deph({s * tensor(pauli_z(), ComplexMatrix::Identity(2, 2)),
                       s * tensor(ComplexMatrix::Identity(2, 2), pauli_z())});
  SubsystemDecomposition dec(4, 2, 2, random_isometry(4, 4, rng));
  OQECReport r = oqec_check(deph, dec);
  CHECK_FALSE(r.correctable);
  CHECK(r.residual > 1e-3);
}

TEST_CASE("synthesize_standard_recovery for a single unitary error") {
  Rng rng(4);
  ComplexMatrix U = random_unitary(4, rng);
  ComplexMatrix P = random_projector(4, 2, rng);
  QuantumChannel ch = unitary_channel(U);
  RecoveryChannel rec = synthesize_standard_recovery(ch, P);
  CHECK(verify_standard_triple(rec.channel, ch, P));
  // One informative Kraus operator, equal to U^dag on the shifted code.
  REQUIRE(rec.channel.kraus().size() == 2);
  CHECK((rec.channel.kraus()[0] - P * U.adjoint()).norm() < 1e-10);
}

TEST_CASE("synthesized standard recovery matches the worked recovery on the code") {
  ExampleFixture ex3 = example_oqec(0);
  const SubsystemDecomposition& dec = ex3.decompositions[0];
  ComplexMatrix P1 = dec.unit(0, 0);

  RecoveryChannel mine = synthesize_standard_recovery(ex3.channel, P1);
  CHECK(verify_standard_triple(mine.channel, ex3.channel, P1));

  // Second route: project the shipped subsystem recovery onto the k = 1
  // sector and compare the two on the code.
  auto [reduced, code] = reduce_to_standard(ex3.recoveries[0].channel, ex3.channel, dec, 0);
  CHECK((code - P1).norm() < 1e-12);
  CHECK(verify_standard_triple(reduced, ex3.channel, P1));
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      ComplexMatrix sigma = ComplexMatrix::Zero(4, 4);
      sigma(i, j) = 1.0;  // code operators live on span{|a>, |b>}
      ComplexMatrix through = ex3.channel.apply(sigma);
      CHECK((mine.channel.apply(through) - reduced.apply(through)).norm() < 1e-9);
    }
}

TEST_CASE("synthesize_oqec_recovery fixes the balanced algebra") {
  // Noiseless case: recovery exists even though tau^A drifts.
  ExampleFixture ex1 = example1(0.3);
  RecoveryChannel r1 = synthesize_oqec_recovery(ex1.channel, ex1.decompositions[0]);
  const SubsystemDecomposition& dec1 = ex1.decompositions[0];
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      ComplexMatrix sigma = dec1.embed(ComplexMatrix::Identity(2, 2), e);
      CHECK((r1.channel.apply(ex1.channel.apply(sigma)) - sigma).norm() < 1e-9);
    }
  CHECK(verify_correctable_triple(r1.channel, ex1.channel, dec1));

  // Partial-isometry example: the synthesized recovery fixes 1_2 (x) sigma_1.
  ExampleFixture ex3 = example_oqec(0);
  RecoveryChannel r3 = synthesize_oqec_recovery(ex3.channel, ex3.decompositions[0]);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      ComplexMatrix sigma = tensor(ComplexMatrix::Identity(2, 2), e);
      CHECK((r3.channel.apply(ex3.channel.apply(sigma)) - sigma).norm() < 1e-9);
    }
  CHECK(verify_correctable_triple(r3.channel, ex3.channel, ex3.decompositions[0]));
}

TEST_CASE("m = 1 subsystem recovery agrees with the standard path on the code") {
  ExampleFixture ex2 = example2(0.25);
  const SubsystemDecomposition& b1 = ex2.decompositions[0];  // m = 1, n = 2
  RecoveryChannel viaOqec = synthesize_oqec_recovery(ex2.channel, b1);
  RecoveryChannel viaStd = synthesize_standard_recovery(ex2.channel, b1.projector());
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      ComplexMatrix sigma = b1.embed(ComplexMatrix::Identity(1, 1), e);
      ComplexMatrix through = ex2.channel.apply(sigma);
      CHECK((viaOqec.channel.apply(through) - viaStd.channel.apply(through)).norm() < 1e-9);
      CHECK((viaOqec.channel.apply(through) - sigma).norm() < 1e-9);
    }
}

TEST_CASE("verify_correctable_triple handles A-sector damage") {
  Rng rng(5);
  // E = Phi_A (x) id_B on the block, identity on the complement; R = id.
  Instance inst = random_correctable(6, 2, 2, 2, rng);
  CHECK(verify_correctable_triple(identity_channel(6), inst.ch, inst.dec));
  CHECK(oqec_check(inst.ch, inst.dec).correctable);

  // The worked partial-isometry triple.
  ExampleFixture ex3 = example_oqec(1);
  CHECK(verify_correctable_triple(ex3.recoveries[0].channel, ex3.channel, ex3.decompositions[0]));

  // Agreement with verify_ns of the composed channel.
  QuantumChannel composed = compose(ex3.recoveries[0].channel, ex3.channel);
  CHECK(verify_ns(composed, ex3.decompositions[0]).noiseless);
}

TEST_CASE("reduce_to_standard") {
  // Worked example, k = 1.
  ExampleFixture ex3 = example_oqec(0);
  auto [red3, code3] =
      reduce_to_standard(ex3.recoveries[0].channel, ex3.channel, ex3.decompositions[0], 0);
  CHECK(verify_standard_triple(red3, ex3.channel, code3));

  // Noiseless case: R = id on the Bell-like split gives a standard code on
  // the symmetric pair; the channel itself satisfies KL there.
  ExampleFixture ex2 = example2(0.25);
  const SubsystemDecomposition& b2 = ex2.decompositions[1];
  auto [red2, code2] = reduce_to_standard(identity_channel(4), ex2.channel, b2, 0);
  CHECK(kl_check(ex2.channel, code2).satisfied);
  CHECK(verify_standard_triple(red2, ex2.channel, code2));

  // Proportionality factor is exactly one.
  Rng rng(6);
  for (auto [i, j] : {std::pair<int, int>{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(i, j) = 1.0;
    ComplexMatrix sigma = b2.sector(0) * e * b2.sector(0).adjoint();  // P_11 . P_11 operator
    ComplexMatrix out = red2.apply(ex2.channel.apply(sigma));
    Complex factor = hs_inner(sigma, out) / hs_inner(sigma, sigma);
    CHECK(std::abs(factor - Complex(1, 0)) < 1e-9);
  }

  // m = 1: the reduction is just the P_A compression.
  const SubsystemDecomposition& b1 = ex2.decompositions[0];
  auto [red1, code1] = reduce_to_standard(identity_channel(4), ex2.channel, b1, 0);
  CHECK((code1 - b1.projector()).norm() < 1e-12);
  CHECK(verify_standard_triple(red1, ex2.channel, code1));

  CHECK_THROWS_AS(reduce_to_standard(identity_channel(4), ex2.channel, b1, 3), InvalidInputError);
  SubsystemDecomposition bad(4, 2, 2, random_isometry(4, 4, rng));
  CHECK_THROWS_AS(reduce_to_standard(identity_channel(4), ex2.channel, bad, 0),
                  NotCorrectableError);
}

TEST_CASE("setting k = l recovers the standard condition") {
  ExampleFixture ex3 = example_oqec(2);
  const SubsystemDecomposition& dec = ex3.decompositions[0];
  OQECReport r = oqec_check(ex3.channel, dec);
  const Eigen::Index K = 2, m = 2;
  for (Eigen::Index k = 0; k < m; ++k) {
    KLReport kl = kl_check(ex3.channel, dec.unit(k, k));
    CHECK(kl.satisfied);
    for (Eigen::Index a = 0; a < K; ++a)
      for (Eigen::Index b = 0; b < K; ++b)
        CHECK(std::abs(kl.lambda(a, b) -
                       r.lambda4[static_cast<size_t>(a) * K + b][k * m + k]) < 1e-11);
  }
}

TEST_CASE("correctability check is sound and complete at small scale") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Index m = 1 + (trial % 3), n = 1 + ((trial / 3) % 3);
    Eigen::Index d = m * n + (trial % 2 ? 2 : 0);
    Instance inst = random_correctable(d, m, n, 2, rng);
    OQECReport r = oqec_check(inst.ch, inst.dec);
    CHECK(r.correctable);
    RecoveryChannel rec = synthesize_oqec_recovery(inst.ch, inst.dec);
    CHECK(verify_correctable_triple(rec.channel, inst.ch, inst.dec));
    // Equivalent form: the same recovery fixes the algebra 1^A (x) B(H^B).
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(i, j) = 1.0;
        ComplexMatrix sigma = inst.dec.embed(ComplexMatrix::Identity(m, m), e);
        CHECK((rec.channel.apply(inst.ch.apply(sigma)) - sigma).norm() < 1e-8);
      }
  }
  for (int trial = 0; trial < 20; ++trial) {
    QuantumChannel ch = random_channel(6, 2, rng);
    SubsystemDecomposition dec(6, 2, 2, random_isometry(6, 4, rng));
    OQECReport r = oqec_check(ch, dec);
    CHECK_FALSE(r.correctable);
    CHECK(r.residual > 1e-3);
  }
}

TEST_CASE("lambda transforms by the representation law and verdicts are invariant") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    bool correctable_case = trial % 2 == 0;
    Eigen::Index m = 2, n = 2, d = 6;
    Instance inst =
        correctable_case
            ? random_correctable(d, m, n, 2, rng)
            : Instance{random_channel(d, 2, rng),
                       SubsystemDecomposition(d, m, n, random_isometry(d, m * n, rng))};
    OQECReport before = oqec_check(inst.ch, inst.dec);

    ComplexMatrix w = random_unitary(2, rng);
    ComplexMatrix u = random_unitary(m, rng);
    Instance moved = transform_instance(inst, w, u, n);
    OQECReport after = oqec_check(moved.ch, moved.dec);

    CHECK(before.correctable == after.correctable);
    CHECK(before.correctable == correctable_case);

    auto expected = transform_lambda(before.lambda4, w, u);
    double worst = 0.0;
    for (size_t ab = 0; ab < expected.size(); ++ab)
      for (size_t kl = 0; kl < expected[ab].size(); ++kl)
        worst = std::max(worst, std::abs(expected[ab][kl] - after.lambda4[ab][kl]));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("exactly zero Kraus operators ride through synthesis") {
  // A zero operator contributes a zero row and column to lambda; the
  // zero-weight direction must be cut rather than polar-factored.
  Rng rng(9);
  ComplexMatrix U = random_unitary(4, rng);
  QuantumChannel ch({U, ComplexMatrix::Zero(4, 4)});
  ComplexMatrix P = random_projector(4, 2, rng);
  KLReport kl = kl_check(ch, P);
  CHECK(kl.satisfied);
  CHECK(std::abs(kl.lambda(1, 1)) < 1e-15);
  RecoveryChannel rec = synthesize_standard_recovery(ch, P);
  CHECK(verify_standard_triple(rec.channel, ch, P));
}
