#include "oqec/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace oqec {

ComplexMatrix Block::block_projector() const {
  ComplexMatrix P = ComplexMatrix::Zero(isometry.rows(), isometry.rows());
  for (Eigen::Index k = 0; k < m; ++k) P += unit(k, k);
  return P;
}

OperatorSpace make_operator_space(const std::vector<ComplexMatrix>& mats, const Tolerance& tol) {
  if (mats.empty()) throw InvalidInputError("make_operator_space: empty input");
  const Eigen::Index d = mats.front().rows();
  for (const auto& m : mats)
    if (m.rows() != d || m.cols() != d)
      throw DimensionError("make_operator_space: matrices must be square with equal dims");
  OperatorSpace space;
  space.dim = d;
  space.basis = orthonormalize(mats, tol);
  space.selfadjoint_closed = true;
  space.multiplicatively_closed = true;
  for (const auto& b : space.basis) {
    if (!in_span(space.basis, b.adjoint(), tol)) space.selfadjoint_closed = false;
    for (const auto& c : space.basis)
      if (!in_span(space.basis, b * c, tol)) {
        space.multiplicatively_closed = false;
        break;
      }
    if (!space.selfadjoint_closed && !space.multiplicatively_closed) break;
  }
  return space;
}

AlgebraBasis generate_algebra(const std::vector<ComplexMatrix>& generators, const Tolerance& tol) {
  if (generators.empty()) throw InvalidInputError("generate_algebra: empty generator list");
  const Eigen::Index d = generators.front().rows();
  for (const auto& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw DimensionError("generate_algebra: generators must be square with equal dims");

  AlgebraBasis alg;
  alg.dim = d;
  std::vector<ComplexMatrix> seed;
  seed.push_back(ComplexMatrix::Identity(d, d));
  for (const auto& g : generators) {
    seed.push_back(g);
    seed.push_back(g.adjoint());
  }
  alg.basis = orthonormalize(seed, tol);

  // Closure loop: only products touching newly added directions need a pass.
  std::vector<ComplexMatrix> frontier = alg.basis;
  auto try_add = [&](const ComplexMatrix& X, std::vector<ComplexMatrix>& fresh) {
    const double scale = std::max(1.0, X.norm());
    ComplexMatrix rem = X;
    for (const auto& b : alg.basis) rem -= hs_inner(b, rem) * b;
    for (const auto& b : alg.basis) rem -= hs_inner(b, rem) * b;
    if (rem.norm() > tol.atol * scale) {
      rem /= rem.norm();
      alg.basis.push_back(rem);
      fresh.push_back(rem);
    }
  };
  while (!frontier.empty() && alg.size() < d * d) {
    std::vector<ComplexMatrix> fresh;
    for (const auto& x : frontier) {
      try_add(x.adjoint(), fresh);
      const size_t snapshot = alg.basis.size();
      for (size_t i = 0; i < snapshot; ++i) {
        try_add(x * alg.basis[i], fresh);
        try_add(alg.basis[i] * x, fresh);
      }
    }
    frontier = std::move(fresh);
  }
  alg.selfadjoint_closed = true;
  alg.multiplicatively_closed = true;
  return alg;
}

AlgebraBasis commutant_of(const std::vector<ComplexMatrix>& mats, const Tolerance& tol) {
  if (mats.empty()) throw InvalidInputError("commutant_of: empty input");
  const Eigen::Index d = mats.front().rows();
  std::vector<ComplexMatrix> gens;
  for (const auto& g : mats) {
    if (g.rows() != d || g.cols() != d)
      throw DimensionError("commutant_of: matrices must be square with equal dims");
    gens.push_back(g);
    gens.push_back(g.adjoint());
  }
  // Stack the maps X -> XG - GX over all generators; the joint null space is
  // the commutant. vec is column-major, so vec(XG) = (G^T (x) I) vec(X).
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix stacked(static_cast<Eigen::Index>(gens.size()) * d * d, d * d);
  for (size_t i = 0; i < gens.size(); ++i)
    stacked.middleRows(static_cast<Eigen::Index>(i) * d * d, d * d) =
        tensor(gens[i].transpose(), id) - tensor(id, gens[i]);
  ComplexMatrix null = null_space(stacked, tol);

  AlgebraBasis out;
  out.dim = d;
  for (Eigen::Index j = 0; j < null.cols(); ++j) out.basis.push_back(unvec(null.col(j), d, d));
  out.selfadjoint_closed = true;
  out.multiplicatively_closed = true;
  return out;
}

AlgebraBasis commutant(const AlgebraBasis& alg, const Tolerance& tol) {
  if (!alg.selfadjoint_closed)
    throw InvalidInputError("commutant: basis must be dagger-closed");
  return commutant_of(alg.basis, tol);
}

AlgebraBasis center(const AlgebraBasis& alg, const Tolerance& tol) {
  if (!alg.selfadjoint_closed || !alg.multiplicatively_closed)
    throw InvalidInputError("center: input must be a dagger-closed algebra");
  AlgebraBasis comm = commutant(alg, tol);
  const Eigen::Index d = alg.dim;
  const Eigen::Index D = d * d;
  ComplexMatrix V1(D, alg.size()), V2(D, comm.size());
  for (Eigen::Index j = 0; j < alg.size(); ++j) V1.col(j) = vec(alg.basis[j]);
  for (Eigen::Index j = 0; j < comm.size(); ++j) V2.col(j) = vec(comm.basis[j]);
  // Common span = joint null space of the two complement projectors.
  ComplexMatrix stacked(2 * D, D);
  stacked.topRows(D) = ComplexMatrix::Identity(D, D) - V1 * V1.adjoint();
  stacked.bottomRows(D) = ComplexMatrix::Identity(D, D) - V2 * V2.adjoint();
  ComplexMatrix null = null_space(stacked, tol);
  AlgebraBasis out;
  out.dim = d;
  for (Eigen::Index j = 0; j < null.cols(); ++j) out.basis.push_back(unvec(null.col(j), d, d));
  out.selfadjoint_closed = true;
  out.multiplicatively_closed = true;
  return out;
}

namespace {

// Eigenvalue clusters of an ascending spectrum, split at gaps above `gap`.
std::vector<std::pair<Eigen::Index, Eigen::Index>> cluster_spectrum(const RealVector& w,
                                                                    double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= w.size(); ++i) {
    if (i == w.size() || w(i) - w(i - 1) > gap) {
      out.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

ComplexMatrix random_selfadjoint_combo(const std::vector<ComplexMatrix>& basis, Rng& rng) {
  ComplexMatrix x = ComplexMatrix::Zero(basis.front().rows(), basis.front().cols());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const auto& b : basis) x += Complex(gauss(rng), gauss(rng)) * b;
  return (x + x.adjoint()) / 2.0;
}

ComplexMatrix random_combo(const std::vector<ComplexMatrix>& basis, Rng& rng) {
  ComplexMatrix x = ComplexMatrix::Zero(basis.front().rows(), basis.front().cols());
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const auto& b : basis) x += Complex(gauss(rng), gauss(rng)) * b;
  return x;
}

constexpr double kSpectralGap = 1e-6;

// Decompose one central block. Returns false when the random draws hit a
// degenerate configuration and the whole attempt should retry.
bool build_block(const AlgebraBasis& alg, const ComplexMatrix& Q, Rng& rng, const Tolerance& tol,
                 Block& out) {
  const Eigen::Index bd = Q.cols();

  std::vector<ComplexMatrix> restricted;
  for (const auto& b : alg.basis) restricted.push_back(Q.adjoint() * b * Q);
  restricted = orthonormalize(restricted, tol);
  const Eigen::Index rdim = static_cast<Eigen::Index>(restricted.size());
  const Eigen::Index m = static_cast<Eigen::Index>(std::llround(std::sqrt(double(rdim))));
  if (m * m != rdim || bd % m != 0) return false;
  const Eigen::Index n = bd / m;

  out.m = m;
  out.n = n;

  if (m == 1) {
    out.isometry = Q;
    out.matrix_units = {Q * Q.adjoint()};
    return true;
  }

  // Minimal projections of the restricted algebra from a generic self-adjoint
  // element: m eigenvalue clusters of multiplicity n each.
  ComplexMatrix W1;  // orthonormal basis of range(p_1)
  std::vector<ComplexMatrix> p(m);
  std::vector<ComplexMatrix> eigvecs(m);
  bool split_ok = false;
  for (int tries = 0; tries < 8 && !split_ok; ++tries) {
    ComplexMatrix a = random_selfadjoint_combo(restricted, rng);
    HermitianEig eig = eig_hermitian(a, Tolerance(1e-6, tol.rank_rtol));
    auto clusters = cluster_spectrum(eig.eigenvalues, kSpectralGap);
    if (static_cast<Eigen::Index>(clusters.size()) != m) continue;
    split_ok = true;
    for (Eigen::Index k = 0; k < m; ++k) {
      auto [lo, hi] = clusters[static_cast<size_t>(k)];
      if (hi - lo != n) {
        split_ok = false;
        break;
      }
      eigvecs[static_cast<size_t>(k)] = eig.eigenvectors.middleCols(lo, n);
      p[static_cast<size_t>(k)] =
          eigvecs[static_cast<size_t>(k)] * eigvecs[static_cast<size_t>(k)].adjoint();
    }
  }
  if (!split_ok) return false;
  W1 = eigvecs[0];

  // Partial isometries u_k : range(p_k) -> range(p_1) from the polar part of
  // p_1 x p_k for a generic algebra element x. Slot 0 stays empty; the first
  // sector maps to itself.
  std::vector<ComplexMatrix> u(m);
  bool connect_ok = false;
  for (int tries = 0; tries < 8 && !connect_ok; ++tries) {
    ComplexMatrix x = random_combo(restricted, rng);
    connect_ok = true;
    for (Eigen::Index k = 1; k < m; ++k) {
      ComplexMatrix t = p[0] * x * p[static_cast<size_t>(k)];
      Eigen::JacobiSVD<ComplexMatrix> svd(t);
      if (svd.singularValues().size() < n || svd.singularValues()(n - 1) < 1e-6) {
        connect_ok = false;
        break;
      }
      u[static_cast<size_t>(k)] = polar_isometry(t, tol);
    }
  }
  if (!connect_ok) return false;

  // Column (k-1)*n + (l-1) of the isometry carries |alpha_k> (x) |beta_l>.
  ComplexMatrix Vres(bd, m * n);
  for (Eigen::Index k = 0; k < m; ++k)
    Vres.middleCols(k * n, n) = (k == 0) ? W1 : ComplexMatrix(u[static_cast<size_t>(k)].adjoint() * W1);
  out.isometry = Q * Vres;

  out.matrix_units.clear();
  const ComplexMatrix idn = ComplexMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l) {
      ComplexMatrix ekl = ComplexMatrix::Zero(m, m);
      ekl(k, l) = 1.0;
      out.matrix_units.push_back(out.isometry * tensor(ekl, idn) * out.isometry.adjoint());
    }
  return true;
}

// Round an entry sequence for the deterministic block ordering.
bool isometry_lex_less(const ComplexMatrix& a, const ComplexMatrix& b) {
  auto snap = [](double x) { return std::llround(x * 1e6); };
  const Eigen::Index na = a.size(), nb = b.size();
  for (Eigen::Index i = 0; i < std::min(na, nb); ++i) {
    auto ra = snap(a.data()[i].real()), rb = snap(b.data()[i].real());
    if (ra != rb) return ra < rb;
    auto ia = snap(a.data()[i].imag()), ib = snap(b.data()[i].imag());
    if (ia != ib) return ia < ib;
  }
  return na < nb;
}

}  // namespace

BlockStructure decompose_structure(const AlgebraBasis& alg, const Tolerance& tol, uint64_t seed) {
  if (!alg.selfadjoint_closed || !alg.multiplicatively_closed)
    throw InvalidInputError("decompose_structure: input must be a dagger-closed algebra");
  const Eigen::Index d = alg.dim;
  if (!in_span(alg.basis, ComplexMatrix::Identity(d, d), tol))
    throw InvalidInputError("decompose_structure: algebra must be unital");

  AlgebraBasis Z = center(alg, tol);

  for (uint64_t attempt = 0; attempt < 5; ++attempt) {
    Rng rng(seed + attempt);
    ComplexMatrix z = random_selfadjoint_combo(Z.basis, rng);
    HermitianEig eig = eig_hermitian(z, Tolerance(1e-6, tol.rank_rtol));
    auto clusters = cluster_spectrum(eig.eigenvalues, kSpectralGap);
    if (static_cast<Eigen::Index>(clusters.size()) != Z.size()) continue;

    BlockStructure bs;
    bs.dim = d;
    bool ok = true;
    for (const auto& [lo, hi] : clusters) {
      Block block;
      if (!build_block(alg, eig.eigenvectors.middleCols(lo, hi - lo), rng, tol, block)) {
        ok = false;
        break;
      }
      bs.blocks.push_back(std::move(block));
    }
    if (!ok) continue;

    Eigen::Index covered = 0;
    Eigen::Index algdim = 0;
    for (const auto& b : bs.blocks) {
      covered += b.m * b.n;
      algdim += b.m * b.m;
    }
    bs.complement_dim = d - covered;
    if (algdim != alg.size()) continue;
    if (reconstruction_residual(alg, bs) > tol.atol * 10) continue;

    std::sort(bs.blocks.begin(), bs.blocks.end(), [](const Block& a, const Block& b) {
      if (a.m != b.m) return a.m > b.m;
      if (a.n != b.n) return a.n > b.n;
      return isometry_lex_less(a.isometry, b.isometry);
    });
    return bs;
  }
  throw SynthesisError(
      "decompose_structure: spectral splitting degenerated for seeds " + std::to_string(seed) +
      ".." + std::to_string(seed + 4) + "; retry with a different seed");
}

ComplexMatrix gamma_map(const Block& block, const ComplexMatrix& sigma) {
  const Eigen::Index d = block.isometry.rows();
  if (sigma.rows() != d || sigma.cols() != d)
    throw DimensionError("gamma_map: operator dimension disagrees with block");
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < block.m; ++k)
    for (Eigen::Index l = 0; l < block.m; ++l)
      out += block.unit(k, l) * sigma * block.unit(k, l).adjoint();
  return out;
}

double matrix_unit_residual(const Block& block) {
  double worst = 0.0;
  const Eigen::Index m = block.m;
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l) {
      const ComplexMatrix& P = block.unit(k, l);
      worst = std::max(worst, (P - block.unit(k, k) * P * block.unit(l, l)).norm());
      worst = std::max(worst, (P.adjoint() - block.unit(l, k)).norm());
      for (Eigen::Index lp = 0; lp < m; ++lp)
        for (Eigen::Index kp = 0; kp < m; ++kp) {
          ComplexMatrix prod = P * block.unit(lp, kp);
          if (lp == l)
            worst = std::max(worst, (prod - block.unit(k, kp)).norm());
          else
            worst = std::max(worst, prod.norm());
        }
    }
  return worst;
}

double reconstruction_residual(const AlgebraBasis& alg, const BlockStructure& bs) {
  double worst = 0.0;
  for (const auto& b : alg.basis) {
    ComplexMatrix rec = ComplexMatrix::Zero(alg.dim, alg.dim);
    for (const auto& block : bs.blocks) {
      const Eigen::Index m = block.m, n = block.n;
      ComplexMatrix Y = block.isometry.adjoint() * b * block.isometry;
      ComplexMatrix G = ComplexMatrix::Zero(m, m);
      for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index kp = 0; kp < m; ++kp) {
          Complex acc = 0.0;
          for (Eigen::Index l = 0; l < n; ++l) acc += Y(k * n + l, kp * n + l);
          G(k, kp) = acc / double(n);
        }
      rec += block.isometry * tensor(G, ComplexMatrix::Identity(n, n)) * block.isometry.adjoint();
    }
    worst = std::max(worst, (b - rec).norm());
  }
  return worst;
}

}  // namespace oqec
