#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oqec/algebra.hpp"
#include "oqec/examples.hpp"

using namespace oqec;

namespace {

ComplexMatrix pauli_z() {
  ComplexMatrix Z(2, 2);
  Z << 1, 0, 0, -1;
  return Z;
}

ComplexMatrix z1() { return tensor(pauli_z(), ComplexMatrix::Identity(2, 2)); }
ComplexMatrix z2() { return tensor(ComplexMatrix::Identity(2, 2), pauli_z()); }

// Sign flip on |11>.
ComplexMatrix sign_flip() {
  ComplexMatrix U = ComplexMatrix::Identity(4, 4);
  U(3, 3) = -1.0;
  return U;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> block_dims(const BlockStructure& bs) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> dims;
  for (const auto& b : bs.blocks) dims.emplace_back(b.m, b.n);
  std::sort(dims.begin(), dims.end());
  return dims;
}

}  // namespace

TEST_CASE("generate_algebra basics") {
  AlgebraBasis trivial = generate_algebra({ComplexMatrix::Identity(2, 2)});
  CHECK(trivial.size() == 1);

  // Alg{Z_1, Z_2} is the diagonal algebra span{1, Z_1, Z_2, Z_1 Z_2}.
  AlgebraBasis diag = generate_algebra({z1(), z2()});
  CHECK(diag.size() == 4);
  std::vector<ComplexMatrix> oracle = {ComplexMatrix::Identity(4, 4), z1(), z2(), z1() * z2()};
  CHECK(span_distance(diag.basis, orthonormalize(oracle)) < 1e-12);
  CHECK(diag.selfadjoint_closed);
  CHECK(diag.multiplicatively_closed);

  // Generic generators produce the full matrix algebra.
  Rng rng(1);
  AlgebraBasis full = generate_algebra({random_matrix(3, 3, rng)});
  CHECK(full.size() == 9);
}

TEST_CASE("interaction algebra of the non-unital pair supports the Bell-like block") {
  ExampleFixture ex2 = example2(0.25);
  AlgebraBasis alg = generate_algebra(ex2.channel.kraus());
  AlgebraBasis comm = commutant(alg);
  // The commutant carries 1^A (x) B(H^B) of the Bell-like split.
  const SubsystemDecomposition& b2 = ex2.decompositions[1];
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      CHECK(in_span(comm.basis, b2.embed(ComplexMatrix::Identity(2, 2), e)));
    }
}

TEST_CASE("commutant") {
  Rng rng(2);
  AlgebraBasis full = generate_algebra({random_matrix(3, 3, rng), random_matrix(3, 3, rng)});
  REQUIRE(full.size() == 9);
  AlgebraBasis scalars = commutant(full);
  CHECK(scalars.size() == 1);

  AlgebraBasis diag = commutant(generate_algebra({z1(), z2()}));
  CHECK(diag.size() == 4);

  // Rotated dephasing pair: six dimensions with the corner pattern.
  ComplexMatrix U = sign_flip();
  AlgebraBasis uns = commutant_of({U.adjoint() * z1(), U.adjoint() * z2()});
  CHECK(uns.size() == 6);
  ComplexMatrix corner = ComplexMatrix::Zero(4, 4);
  corner(0, 3) = 1.0;
  CHECK(in_span(uns.basis, corner));
}

TEST_CASE("center") {
  Rng rng(3);
  AlgebraBasis full = generate_algebra({random_matrix(3, 3, rng)});
  CHECK(center(full).size() == 1);

  AlgebraBasis diag = generate_algebra({z1(), z2()});
  AlgebraBasis zc = center(diag);
  CHECK(zc.size() == 4);
  CHECK(span_distance(zc.basis, diag.basis) < 1e-10);

  // (M_2 (x) 1_3) + M_1 on C^7 has a two-dimensional center.
  std::vector<ComplexMatrix> gens;
  for (int i = 0; i < 2; ++i) {
    ComplexMatrix g = ComplexMatrix::Zero(7, 7);
    g.topLeftCorner(6, 6) = tensor(random_matrix(2, 2, rng), ComplexMatrix::Identity(3, 3));
    g(6, 6) = Complex(double(i), 0.5);
    gens.push_back(g);
  }
  AlgebraBasis sum = generate_algebra(gens);
  CHECK(sum.size() == 5);  // 4 + 1
  CHECK(center(sum).size() == 2);
}

TEST_CASE("decompose_structure on the full matrix algebra") {
  Rng rng(4);
  AlgebraBasis full = generate_algebra({random_matrix(3, 3, rng)});
  BlockStructure bs = decompose_structure(full);
  REQUIRE(bs.blocks.size() == 1);
  CHECK(bs.blocks[0].m == 3);
  CHECK(bs.blocks[0].n == 1);
  CHECK(bs.complement_dim == 0);
  CHECK(matrix_unit_residual(bs.blocks[0]) < 1e-10);
  CHECK(reconstruction_residual(full, bs) < 1e-10);
}

TEST_CASE("decompose_structure finds M_2 + C + C for the rotated dephasing pair") {
  ComplexMatrix U = sign_flip();
  AlgebraBasis uns = commutant_of({U.adjoint() * z1(), U.adjoint() * z2()});
  BlockStructure bs = decompose_structure(uns);
  auto dims = block_dims(bs);
  REQUIRE(dims.size() == 3);
  CHECK(dims[0] == std::make_pair<Eigen::Index, Eigen::Index>(1, 1));
  CHECK(dims[1] == std::make_pair<Eigen::Index, Eigen::Index>(1, 1));
  CHECK(dims[2] == std::make_pair<Eigen::Index, Eigen::Index>(2, 1));
  for (const auto& b : bs.blocks) CHECK(matrix_unit_residual(b) < 1e-10);
  CHECK(reconstruction_residual(uns, bs) < 1e-10);
}

TEST_CASE("decompose_structure recovers a hidden (M_2 (x) 1_2) + C + C") {
  Rng rng(5);
  ComplexMatrix W = random_unitary(6, rng);
  std::vector<ComplexMatrix> gens;
  for (int i = 0; i < 2; ++i) {
    ComplexMatrix g = ComplexMatrix::Zero(6, 6);
    g.topLeftCorner(4, 4) = tensor(random_matrix(2, 2, rng), ComplexMatrix::Identity(2, 2));
    g(4, 4) = Complex(0.3 * i, -0.2);
    g(5, 5) = Complex(1.1, 0.4 * i);
    gens.push_back(W * g * W.adjoint());
  }
  AlgebraBasis alg = generate_algebra(gens);
  BlockStructure bs = decompose_structure(alg);
  auto dims = block_dims(bs);
  REQUIRE(dims.size() == 3);
  CHECK(dims[0] == std::make_pair<Eigen::Index, Eigen::Index>(1, 1));
  CHECK(dims[1] == std::make_pair<Eigen::Index, Eigen::Index>(1, 1));
  CHECK(dims[2] == std::make_pair<Eigen::Index, Eigen::Index>(2, 2));
  for (const auto& b : bs.blocks) {
    CHECK(matrix_unit_residual(b) < 1e-10);
    ComplexMatrix P = b.block_projector();
    CHECK((P * P - P).norm() < 1e-10);
    CHECK(std::llround(P.trace().real()) == b.m * b.n);
  }
  CHECK(reconstruction_residual(alg, bs) < 1e-9);

  // Seed independence of the block-dimension multiset.
  for (uint64_t seed = 1; seed <= 3; ++seed)
    CHECK(block_dims(decompose_structure(alg, {}, seed)) == dims);
}

TEST_CASE("algebra and commutant dimensions match the block structure") {
  Rng rng(6);
  ComplexMatrix W = random_unitary(6, rng);
  std::vector<ComplexMatrix> gens;
  for (int i = 0; i < 2; ++i) {
    ComplexMatrix g = ComplexMatrix::Zero(6, 6);
    g.topLeftCorner(4, 4) = tensor(random_matrix(2, 2, rng), ComplexMatrix::Identity(2, 2));
    g.bottomRightCorner(2, 2) = random_matrix(2, 2, rng);
    gens.push_back(W * g * W.adjoint());
  }
  AlgebraBasis alg = generate_algebra(gens);
  AlgebraBasis comm = commutant(alg);
  BlockStructure bs = decompose_structure(alg);
  Eigen::Index sum_m2 = 0, sum_n2 = 0;
  for (const auto& b : bs.blocks) {
    sum_m2 += b.m * b.m;
    sum_n2 += b.n * b.n;
  }
  CHECK(alg.size() == sum_m2);
  CHECK(comm.size() == sum_n2);
}

TEST_CASE("double commutant returns the algebra span") {
  Rng rng(7);
  for (Eigen::Index d : {4, 6, 8}) {
    ComplexMatrix W = random_unitary(d, rng);
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    g.topLeftCorner(d - 2, d - 2) =
        tensor(random_matrix((d - 2) / 2, (d - 2) / 2, rng), ComplexMatrix::Identity(2, 2));
    g.bottomRightCorner(2, 2) = random_matrix(2, 2, rng);
    AlgebraBasis alg = generate_algebra({W * g * W.adjoint()});
    AlgebraBasis dd = commutant(commutant(alg));
    CHECK(span_distance(dd.basis, alg.basis) < 1e-8);
  }
}

TEST_CASE("gamma map") {
  Rng rng(8);
  ComplexMatrix W = random_unitary(6, rng);
  std::vector<ComplexMatrix> gens;
  ComplexMatrix g = ComplexMatrix::Zero(6, 6);
  g.topLeftCorner(4, 4) = tensor(random_matrix(2, 2, rng), ComplexMatrix::Identity(2, 2));
  gens.push_back(W * g * W.adjoint());
  gens.push_back(ComplexMatrix::Identity(6, 6));
  AlgebraBasis alg = generate_algebra(gens);
  BlockStructure bs = decompose_structure(alg);
  const Block* big = nullptr;
  for (const auto& b : bs.blocks)
    if (b.m == 2 && b.n == 2) big = &b;
  REQUIRE(big != nullptr);
  const ComplexMatrix& V = big->isometry;

  ComplexMatrix sa = random_matrix(2, 2, rng), sb = random_matrix(2, 2, rng);
  ComplexMatrix sigma = V * tensor(sa, sb) * V.adjoint();
  ComplexMatrix expect = sa.trace() * (V * tensor(ComplexMatrix::Identity(2, 2), sb) * V.adjoint());
  CHECK((gamma_map(*big, sigma) - expect).norm() < 1e-10);

  // Operators supported on the complement of the block are annihilated.
  ComplexMatrix Pperp = ComplexMatrix::Identity(6, 6) - big->block_projector();
  ComplexMatrix off = Pperp * random_matrix(6, 6, rng) * Pperp;
  CHECK(gamma_map(*big, off).norm() < 1e-10);

  // Against the direct partial-trace formula on a full-space operator.
  ComplexMatrix any = random_matrix(6, 6, rng);
  ComplexMatrix compressed = V.adjoint() * any * V;
  ComplexMatrix direct =
      V * tensor(ComplexMatrix::Identity(2, 2), partial_trace_A(compressed, 2, 2)) * V.adjoint();
  CHECK((gamma_map(*big, any) - direct).norm() < 1e-10);
}

TEST_CASE("decompose_structure stress: random multi-block direct sums") {
  // Hidden structures with several blocks and mixed multiplicities,
  // conjugated by a random unitary; dimension data and residuals must come
  // back clean for every draw and stay stable across seeds.
  struct Shape {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;  // (m, n)
  };
  std::vector<Shape> shapes = {
      {{{3, 2}, {2, 2}, {1, 1}}},          // d = 11
      {{{2, 3}, {2, 1}, {1, 2}, {1, 1}}},  // d = 11
      {{{4, 1}, {1, 4}}},                  // d = 8
      {{{2, 2}, {2, 2}}},                  // d = 8, repeated dims
      {{{1, 3}, {1, 3}, {1, 1}}},          // d = 7, abelian with multiplicity
  };
  Rng rng(99);
  for (size_t s = 0; s < shapes.size(); ++s) {
    const auto& shape = shapes[s].blocks;
    Eigen::Index d = 0;
    for (auto [m, n] : shape) d += m * n;
    ComplexMatrix W = random_unitary(d, rng);

    std::vector<ComplexMatrix> gens;
    for (int g = 0; g < 2; ++g) {
      ComplexMatrix blockdiag = ComplexMatrix::Zero(d, d);
      Eigen::Index off = 0;
      for (auto [m, n] : shape) {
        blockdiag.block(off, off, m * n, m * n) =
            tensor(random_matrix(m, m, rng), ComplexMatrix::Identity(n, n));
        off += m * n;
      }
      gens.push_back(W * blockdiag * W.adjoint());
    }
    AlgebraBasis alg = generate_algebra(gens);

    Eigen::Index want_dim = 0;
    for (auto [m, n] : shape) want_dim += m * m;
    REQUIRE(alg.size() == want_dim);

    std::vector<std::pair<Eigen::Index, Eigen::Index>> want(shape);
    std::sort(want.begin(), want.end());
    for (uint64_t seed = 0; seed < 3; ++seed) {
      BlockStructure bs = decompose_structure(alg, {}, seed);
      CHECK(block_dims(bs) == want);
      CHECK(bs.complement_dim == 0);
      for (const auto& b : bs.blocks) CHECK(matrix_unit_residual(b) < 1e-9);
      CHECK(reconstruction_residual(alg, bs) < 1e-9);
    }
  }
}

TEST_CASE("one-dimensional ambient space") {
  AlgebraBasis alg = generate_algebra({ComplexMatrix::Identity(1, 1)});
  CHECK(alg.size() == 1);
  BlockStructure bs = decompose_structure(alg);
  REQUIRE(bs.blocks.size() == 1);
  CHECK(bs.blocks[0].m == 1);
  CHECK(bs.blocks[0].n == 1);
  CHECK(commutant(alg).size() == 1);
}
