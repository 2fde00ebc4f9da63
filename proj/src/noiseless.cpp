#include "oqec/noiseless.hpp"

#include <algorithm>
#include <cmath>

namespace oqec {

SubsystemDecomposition::SubsystemDecomposition(Eigen::Index dim, Eigen::Index m, Eigen::Index n,
                                               ComplexMatrix isometry, const Tolerance& tol)
    : dim_(dim), m_(m), n_(n), isometry_(std::move(isometry)) {
  if (m_ < 1 || n_ < 1 || m_ * n_ > dim_)
    throw DimensionError("SubsystemDecomposition: need 1 <= m*n <= dim");
  if (isometry_.rows() != dim_ || isometry_.cols() != m_ * n_)
    throw DimensionError("SubsystemDecomposition: isometry must be dim x (m*n)");
  const double ortho =
      (isometry_.adjoint() * isometry_ - ComplexMatrix::Identity(m_ * n_, m_ * n_)).norm();
  if (ortho > tol.atol * std::max<double>(1.0, double(m_ * n_)))
    throw InvalidInputError("SubsystemDecomposition: isometry columns not orthonormal (residual " +
                            std::to_string(ortho) + ")");
  projector_ = isometry_ * isometry_.adjoint();
}

ComplexMatrix SubsystemDecomposition::unit(Eigen::Index k, Eigen::Index l) const {
  return sector(k) * sector(l).adjoint();
}

ComplexMatrix SubsystemDecomposition::embed(const ComplexMatrix& sigmaA,
                                            const ComplexMatrix& sigmaB) const {
  if (sigmaA.rows() != m_ || sigmaA.cols() != m_ || sigmaB.rows() != n_ || sigmaB.cols() != n_)
    throw DimensionError("embed: factor dimensions disagree with decomposition");
  return isometry_ * tensor(sigmaA, sigmaB) * isometry_.adjoint();
}

ComplexMatrix SubsystemDecomposition::compress(const ComplexMatrix& X) const {
  if (X.rows() != dim_ || X.cols() != dim_)
    throw DimensionError("compress: operator dimension disagrees with decomposition");
  return isometry_.adjoint() * X * isometry_;
}

SubsystemDecomposition swap_factors(const SubsystemDecomposition& dec, const Tolerance& tol) {
  ComplexMatrix V(dec.dim(), dec.m() * dec.n());
  for (Eigen::Index k = 0; k < dec.n(); ++k)
    for (Eigen::Index l = 0; l < dec.m(); ++l)
      V.col(k * dec.m() + l) = dec.isometry().col(l * dec.n() + k);
  return SubsystemDecomposition(dec.dim(), dec.n(), dec.m(), std::move(V), tol);
}

OperatorSpace fixed_points(const QuantumChannel& ch, const Tolerance& tol) {
  const Eigen::Index d = ch.dim();
  ComplexMatrix S = superoperator(ch) - ComplexMatrix::Identity(d * d, d * d);
  ComplexMatrix null = null_space(S, tol);
  OperatorSpace out;
  out.dim = d;
  for (Eigen::Index j = 0; j < null.cols(); ++j) out.basis.push_back(unvec(null.col(j), d, d));
  return out;
}

NSReport verify_ns(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                   const Tolerance& tol) {
  if (ch.dim() != dec.dim()) throw DimensionError("verify_ns: dims disagree");
  const Eigen::Index m = dec.m(), n = dec.n();
  NSReport report;
  report.lambda.assign(ch.kraus().size(), std::vector<Complex>(m * m, Complex(0, 0)));
  const ComplexMatrix& P = dec.projector();
  for (size_t a = 0; a < ch.kraus().size(); ++a) {
    const ComplexMatrix& E = ch.kraus()[a];
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index l = 0; l < m; ++l) {
        // P_kk E P_ll compressed: only the (k,l) sector survives.
        ComplexMatrix sector = dec.sector(k).adjoint() * E * dec.sector(l);  // n x n
        const Complex lambda = sector.trace() / double(n);
        report.lambda[a][k * m + l] = lambda;
        report.cond1_residual = std::max(
            report.cond1_residual,
            (sector - lambda * ComplexMatrix::Identity(n, n)).norm());
      }
    report.cond2_residual = std::max(report.cond2_residual, ((E * P) - P * E * P).norm());
  }
  report.noiseless = report.cond1_residual <= tol.atol && report.cond2_residual <= tol.atol;
  return report;
}

bool verify_ns_semantic(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                        const Tolerance& tol) {
  if (ch.dim() != dec.dim()) throw DimensionError("verify_ns_semantic: dims disagree");
  const Eigen::Index m = dec.m(), n = dec.n();
  const ComplexMatrix idA = ComplexMatrix::Identity(m, m);
  const ComplexMatrix& P = dec.projector();

  std::vector<ComplexMatrix> taus;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      ComplexMatrix eij = ComplexMatrix::Zero(n, n);
      eij(i, j) = 1.0;
      ComplexMatrix rho = ch.apply(dec.embed(idA, eij));
      if ((rho - P * rho * P).norm() > tol.atol) return false;
      ComplexMatrix Y = dec.compress(rho);
      // Factor Y = tau (x) e_ij and check the residual.
      ComplexMatrix tau(m, m);
      for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index kp = 0; kp < m; ++kp) tau(k, kp) = Y(k * n + i, kp * n + j);
      if ((Y - tensor(tau, eij)).norm() > tol.atol) return false;
      taus.push_back(std::move(tau));
    }
  // tau^A must not depend on the probe: compare every diagonal probe's tau
  // and require off-diagonal probes to agree as well.
  for (size_t i = 1; i < taus.size(); ++i)
    if ((taus[i] - taus[0]).norm() > tol.atol) return false;
  return true;
}

ComplexMatrix extract_tau(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                          const ComplexMatrix& sigmaA, const ComplexMatrix& sigmaB,
                          const Tolerance& tol) {
  NSReport report = verify_ns(ch, dec, tol);
  if (!report.noiseless)
    throw NotCorrectableError("extract_tau: decomposition is not noiseless for this channel");
  ComplexMatrix Y = dec.compress(ch.apply(dec.embed(sigmaA, sigmaB)));
  // Least-squares B-side contraction: tau = Tr_B[Y (1 (x) sigmaB^dag)] / ||sigmaB||^2.
  const double weight = sigmaB.squaredNorm();
  if (weight <= 0.0) throw InvalidInputError("extract_tau: zero probe");
  ComplexMatrix contracted =
      partial_trace_B(Y * tensor(ComplexMatrix::Identity(dec.m(), dec.m()), sigmaB.adjoint()),
                      dec.m(), dec.n());
  return contracted / weight;
}

ComplexMatrix extract_tau(const QuantumChannel& ch, const SubsystemDecomposition& dec,
                          const ComplexMatrix& sigmaA, const Tolerance& tol) {
  ComplexMatrix probe = ComplexMatrix::Zero(dec.n(), dec.n());
  probe(0, 0) = 1.0;
  ComplexMatrix tau = extract_tau(ch, dec, sigmaA, probe, tol);
  // Cross-check the probe independence promised by the noiseless conditions.
  for (Eigen::Index i = 0; i < dec.n(); ++i)
    for (Eigen::Index j = 0; j < dec.n(); ++j) {
      ComplexMatrix eij = ComplexMatrix::Zero(dec.n(), dec.n());
      eij(i, j) = 1.0;
      ComplexMatrix Y = dec.compress(ch.apply(dec.embed(sigmaA, eij)));
      if ((Y - tensor(tau, eij)).norm() > tol.atol * 10)
        throw NotCorrectableError("extract_tau: tau depends on the probe");
    }
  return tau;
}

NSSearch find_ns_unital(const QuantumChannel& ch, const Tolerance& tol, uint64_t seed) {
  ChannelReport report = validate(ch.kraus(), tol);
  if (!report.unital)
    throw NotUnitalError(
        "find_ns_unital: channel is not unital; use verify_ns for a candidate decomposition "
        "or the UNS route",
        report.unital_residual);
  AlgebraBasis interaction = generate_algebra(ch.kraus(), tol);
  NSSearch search;
  search.structure = decompose_structure(interaction, tol, seed);
  for (const auto& block : search.structure.blocks) {
    SubsystemDecomposition dec(ch.dim(), block.m, block.n, block.isometry, tol);
    if (block.n >= 2) {
      if (!verify_ns(ch, dec, tol).noiseless)
        throw SynthesisError("find_ns_unital: discovered block failed verification");
      search.noiseless.push_back(std::move(dec));
    } else {
      search.classical.push_back(std::move(dec));
    }
  }
  return search;
}

}  // namespace oqec
