#include "oqec/oqec.hpp"

#include <algorithm>
#include <cmath>

namespace oqec {

namespace {

// Orthonormal operator basis of P B(H) P from an isometry onto range(P).
std::vector<ComplexMatrix> code_operator_basis(const ComplexMatrix& P, const Tolerance& tol) {
  HermitianEig eig = eig_hermitian(P, tol);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    if (eig.eigenvalues(i) > 0.5) idx.push_back(i);
  ComplexMatrix W(P.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j) W.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors.col(idx[j]);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index i = 0; i < W.cols(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j)
      basis.push_back(W.col(i) * W.col(j).adjoint());
  return basis;
}

}  // namespace

KLReport kl_check(const QuantumChannel& ch, const ComplexMatrix& P, const Tolerance& tol) {
  if (P.rows() != ch.dim() || P.cols() != ch.dim())
    throw DimensionError("kl_check: projector dimension disagrees with channel");
  if (!is_projector(P, tol))
    throw InvalidInputError("kl_check: P is not an orthogonal projector within tolerance");
  const auto& kraus = ch.kraus();
  const int K = static_cast<int>(kraus.size());
  const double trP = P.trace().real();
  KLReport report;
  report.lambda = ComplexMatrix::Zero(K, K);
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b) {
      ComplexMatrix compressed = P * kraus[a].adjoint() * kraus[b] * P;
      const Complex lambda = compressed.trace() / trP;
      report.lambda(a, b) = lambda;
      report.residual = std::max(report.residual, (compressed - lambda * P).norm());
    }
  report.satisfied = report.residual <= tol.atol;
  report.lambda_psd_mineig =
      eig_hermitian((report.lambda + report.lambda.adjoint()) / 2.0, tol).eigenvalues.minCoeff();
  return report;
}

bool verify_standard_triple(const QuantumChannel& R, const QuantumChannel& E,
                            const ComplexMatrix& P, const Tolerance& tol) {
  if (R.dim() != E.dim() || P.rows() != E.dim())
    throw DimensionError("verify_standard_triple: dims disagree");
  if (!is_projector(P, tol))
    throw InvalidInputError("verify_standard_triple: P is not a projector within tolerance");
  for (const auto& sigma : code_operator_basis(P, tol))
    if ((R.apply(E.apply(sigma)) - sigma).norm() > tol.atol) return false;
  return true;
}

OQECReport oqec_check(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                      const Tolerance& tol) {
  if (ch.dim() != dec.dim()) throw DimensionError("oqec_check: dims disagree");
  const auto& kraus = ch.kraus();
  const int K = static_cast<int>(kraus.size());
  const Eigen::Index m = dec.m(), n = dec.n();
  OQECReport report;
  report.lambda4.assign(static_cast<size_t>(K) * K, std::vector<Complex>(m * m, Complex(0, 0)));
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b) {
      ComplexMatrix EE = kraus[a].adjoint() * kraus[b];
      for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < m; ++l) {
          ComplexMatrix sector = dec.sector(k).adjoint() * EE * dec.sector(l);  // n x n
          const Complex lambda = sector.trace() / double(n);
          report.lambda4[static_cast<size_t>(a) * K + b][k * m + l] = lambda;
          report.residual =
              std::max(report.residual,
                       (sector - lambda * ComplexMatrix::Identity(n, n)).norm());
        }
    }
  report.correctable = report.residual <= tol.atol;
  return report;
}

RecoveryChannel synthesize_standard_recovery(const QuantumChannel& ch, const ComplexMatrix& P,
                                             const Tolerance& tol) {
  KLReport kl = kl_check(ch, P, tol);
  if (!kl.satisfied)
    throw NotCorrectableError("synthesize_standard_recovery: KL condition violated (residual " +
                              std::to_string(kl.residual) + ")");
  const Eigen::Index d = ch.dim();
  const auto& kraus = ch.kraus();
  const int K = static_cast<int>(kraus.size());

  // Remix the errors so their compressions to the code are orthogonal:
  // lambda = W D W^dag, F_c = sum_a W_ac E_a gives P F_c^dag F_c' P = d_c delta P.
  HermitianEig eig = eig_hermitian((kl.lambda + kl.lambda.adjoint()) / 2.0, tol);
  const double dmax = eig.eigenvalues.size() > 0 ? eig.eigenvalues.maxCoeff() : 0.0;

  std::vector<ComplexMatrix> recovery;
  ComplexMatrix range_sum = ComplexMatrix::Zero(d, d);
  for (int c = 0; c < K; ++c) {
    if (eig.eigenvalues(c) <= tol.rank_rtol * dmax) continue;  // zero-weight error direction
    ComplexMatrix F = ComplexMatrix::Zero(d, d);
    for (int a = 0; a < K; ++a) F += eig.eigenvectors(a, c) * kraus[a];
    ComplexMatrix V = polar_isometry(F * P, tol);  // V^dag V = P, V V^dag = P_c
    ComplexMatrix Pc = V * V.adjoint();
    recovery.push_back(V.adjoint() * Pc);
    range_sum += Pc;
  }
  if (recovery.empty())
    throw SynthesisError("synthesize_standard_recovery: no error direction survived the cutoff");
  recovery.push_back(ComplexMatrix::Identity(d, d) - range_sum);  // minimal TP completion

  // The completion is a projector only when the measurement subspaces came
  // out mutually orthogonal; with marginal inputs the polar step degenerates.
  RecoveryChannel out = [&]() -> RecoveryChannel {
    try {
      return {QuantumChannel(std::move(recovery), tol), "standard measurement-reversal"};
    } catch (const TracePreservationError& err) {
      throw SynthesisError(
          "synthesize_standard_recovery: degenerate polar step, measurement subspaces overlap "
          "(completion residual " + std::to_string(err.residual) + ")");
    }
  }();
  if (!verify_standard_triple(out.channel, ch, P, Tolerance(tol.atol * 100, tol.rank_rtol)))
    throw SynthesisError("synthesize_standard_recovery: synthesized recovery failed verification");
  return out;
}

RecoveryChannel synthesize_oqec_recovery(const QuantumChannel& ch,
                                         const SubsystemDecomposition& dec,
                                         const Tolerance& tol) {
  OQECReport check = oqec_check(ch, dec, tol);
  if (!check.correctable)
    throw NotCorrectableError("synthesize_oqec_recovery: correctability condition violated "
                              "(residual " + std::to_string(check.residual) + ")");
  const Eigen::Index d = ch.dim(), m = dec.m();
  const double root_m = std::sqrt(double(m));

  // Induced code channel on H^B, embedded into H through the k = 1 sector:
  // errors E_a P |alpha_k> / sqrt(m) become (E_a V_k V_1^dag) / sqrt(m) on the
  // code C_B = V_1 H^B, completed off the code to keep the set TP.
  const ComplexMatrix embed = dec.sector(0);      // V_1, d x n
  const ComplexMatrix Pb = embed * embed.adjoint();
  std::vector<ComplexMatrix> induced;
  for (const auto& E : ch.kraus())
    for (Eigen::Index k = 0; k < m; ++k)
      induced.push_back(E * dec.sector(k) * embed.adjoint() / root_m);
  induced.push_back(ComplexMatrix::Identity(d, d) - Pb);
  QuantumChannel code_channel(std::move(induced), tol);

  RecoveryChannel std_rec = synthesize_standard_recovery(code_channel, Pb, tol);

  // Re-inflate the A side: rho^B -> (1/m) 1^A (x) rho^B, completed off the code.
  std::vector<ComplexMatrix> inflate;
  for (Eigen::Index k = 0; k < m; ++k) inflate.push_back(dec.sector(k) * embed.adjoint() / root_m);
  inflate.push_back(ComplexMatrix::Identity(d, d) - Pb);
  QuantumChannel inflate_channel(std::move(inflate), tol);

  RecoveryChannel out{compose(inflate_channel, std_rec.channel),
                      "oqec code-channel recovery + maximally mixed re-inflation"};
  if (!verify_correctable_triple(out.channel, ch, dec, Tolerance(tol.atol * 100, tol.rank_rtol)))
    throw SynthesisError("synthesize_oqec_recovery: synthesized recovery failed verification");
  return out;
}

bool verify_correctable_triple(const QuantumChannel& R, const QuantumChannel& E,
                               const SubsystemDecomposition& dec, const Tolerance& tol) {
  if (R.dim() != E.dim() || E.dim() != dec.dim())
    throw DimensionError("verify_correctable_triple: dims disagree");
  const Eigen::Index m = dec.m(), n = dec.n();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      ComplexMatrix eA = ComplexMatrix::Zero(m, m);
      eA(i, j) = 1.0;
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) {
          ComplexMatrix eB = ComplexMatrix::Zero(n, n);
          eB(k, l) = 1.0;
          ComplexMatrix rho = R.apply(E.apply(dec.embed(eA, eB)));
          // (Tr_A . P_A)(rho) against Tr_A(eA (x) eB) = delta_ij eB.
          ComplexMatrix lhs = partial_trace_A(dec.compress(rho), m, n);
          ComplexMatrix rhs = (i == j) ? eB : ComplexMatrix(ComplexMatrix::Zero(n, n));
          if ((lhs - rhs).norm() > tol.atol) return false;
        }
    }
  return true;
}

std::pair<QuantumChannel, ComplexMatrix> reduce_to_standard(const QuantumChannel& R,
                                                            const QuantumChannel& E,
                                                            const SubsystemDecomposition& dec,
                                                            Eigen::Index k, const Tolerance& tol) {
  if (k < 0 || k >= dec.m()) throw InvalidInputError("reduce_to_standard: sector index out of range");
  if (!verify_correctable_triple(R, E, dec, tol))
    throw NotCorrectableError("reduce_to_standard: triple is not correctable");
  const Eigen::Index d = dec.dim();
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index l = 0; l < dec.m(); ++l)
    for (const auto& r : R.kraus()) kraus.push_back(dec.unit(k, l) * r);
  // P_k is trace preserving only on range(P_A); complete on the complement.
  ComplexMatrix leftover = ComplexMatrix::Identity(d, d) - dec.projector();
  if (leftover.norm() > tol.atol)
    for (const auto& r : R.kraus()) kraus.push_back(leftover * r);
  QuantumChannel reduced(std::move(kraus), tol);
  ComplexMatrix code = dec.unit(k, k);
  return {std::move(reduced), std::move(code)};
}

}  // namespace oqec
