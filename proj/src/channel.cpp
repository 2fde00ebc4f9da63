#include "oqec/channel.hpp"

#include <cmath>

namespace oqec {

namespace {

void check_square_uniform(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw InvalidInputError("channel: empty Kraus list");
  const Eigen::Index d = kraus.front().rows();
  for (const auto& e : kraus)
    if (e.rows() != d || e.cols() != d)
      throw DimensionError("channel: Kraus operators must be square with equal dims");
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus, const Tolerance& tol)
    : dim_(0), kraus_(std::move(kraus)) {
  check_square_uniform(kraus_);
  dim_ = kraus_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : kraus_) sum += e.adjoint() * e;
  const double residual = (sum - ComplexMatrix::Identity(dim_, dim_)).norm();
  if (residual > tol.atol)
    throw TracePreservationError(
        "channel: Kraus set is not trace preserving (residual " + std::to_string(residual) + ")",
        residual);
}

ChannelReport validate(const std::vector<ComplexMatrix>& kraus, const Tolerance& tol) {
  check_square_uniform(kraus);
  const Eigen::Index d = kraus.front().rows();
  ComplexMatrix tp = ComplexMatrix::Zero(d, d);
  ComplexMatrix un = ComplexMatrix::Zero(d, d);
  for (const auto& e : kraus) {
    tp += e.adjoint() * e;
    un += e * e.adjoint();
  }
  ChannelReport report;
  report.tp_residual = (tp - ComplexMatrix::Identity(d, d)).norm();
  report.unital_residual = (un - ComplexMatrix::Identity(d, d)).norm();
  report.trace_preserving = report.tp_residual <= tol.atol;
  report.unital = report.unital_residual <= tol.atol;
  report.kraus_count = static_cast<int>(kraus.size());
  return report;
}

ChannelReport validate(const QuantumChannel& ch, const Tolerance& tol) {
  return validate(ch.kraus(), tol);
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& sigma) const {
  if (sigma.rows() != dim_ || sigma.cols() != dim_)
    throw DimensionError("apply: state dimension disagrees with channel");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : kraus_) out += e * sigma * e.adjoint();
  return out;
}

ComplexMatrix QuantumChannel::apply_dual(const ComplexMatrix& sigma) const {
  if (sigma.rows() != dim_ || sigma.cols() != dim_)
    throw DimensionError("apply_dual: state dimension disagrees with channel");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : kraus_) out += e.adjoint() * sigma * e;
  return out;
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner) {
  if (outer.dim() != inner.dim()) throw DimensionError("compose: channel dims disagree");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(outer.kraus().size() * inner.kraus().size());
  for (const auto& r : outer.kraus())
    for (const auto& e : inner.kraus()) kraus.push_back(r * e);
  return QuantumChannel(std::move(kraus));
}

QuantumChannel identity_channel(Eigen::Index d) {
  return QuantumChannel({ComplexMatrix::Identity(d, d)});
}

QuantumChannel unitary_channel(const ComplexMatrix& U, const Tolerance& tol) {
  if (!is_unitary(U, tol)) throw InvalidInputError("unitary_channel: matrix is not unitary");
  return QuantumChannel({U}, tol);
}

ComplexMatrix choi(const QuantumChannel& ch) {
  const Eigen::Index d = ch.dim();
  ComplexMatrix J = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& e : ch.kraus()) {
    ComplexVector v = vec(e);  // column-major vec gives J = sum |i><j| (x) E(|i><j|)
    J += v * v.adjoint();
  }
  return J;
}

QuantumChannel kraus_from_choi(const ComplexMatrix& J, Eigen::Index dim, const Tolerance& tol) {
  if (J.rows() != dim * dim || J.cols() != dim * dim)
    throw DimensionError("kraus_from_choi: Choi matrix must be dim^2 square");
  HermitianEig eig = eig_hermitian(J, tol);
  const double lmax = eig.eigenvalues.size() > 0 ? eig.eigenvalues.maxCoeff() : 0.0;
  if (eig.eigenvalues.minCoeff() < -tol.atol * std::max(1.0, lmax))
    throw InvalidInputError("kraus_from_choi: Choi matrix is not PSD within tolerance");
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lambda = eig.eigenvalues(k);
    if (lambda > tol.rank_rtol * lmax)
      kraus.push_back(std::sqrt(lambda) * unvec(eig.eigenvectors.col(k), dim, dim));
  }
  return QuantumChannel(std::move(kraus), tol);
}

double channel_distance(const QuantumChannel& a, const QuantumChannel& b) {
  if (a.dim() != b.dim()) throw DimensionError("channel_distance: dims disagree");
  return (choi(a) - choi(b)).norm();
}

ComplexMatrix superoperator(const QuantumChannel& ch) {
  const Eigen::Index d = ch.dim();
  ComplexMatrix S = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& e : ch.kraus()) S += tensor(e.conjugate(), e);
  return S;
}

QuantumChannel random_channel(Eigen::Index d, int k, Rng& rng) {
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (int a = 0; a < k; ++a) {
    kraus.push_back(random_matrix(d, d, rng));
    sum += kraus.back().adjoint() * kraus.back();
  }
  // Right-normalize the whole set: E_a <- E_a sum^{-1/2}.
  HermitianEig eig = eig_hermitian(sum, Tolerance(1e-6, 1e-8));
  ComplexMatrix inv_sqrt = eig.eigenvectors *
                           eig.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                           eig.eigenvectors.adjoint();
  for (auto& e : kraus) e = e * inv_sqrt;
  return QuantumChannel(std::move(kraus));
}

QuantumChannel random_unital_mixture(Eigen::Index d, int k, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& x : p) total += (x = unif(rng));
  std::vector<ComplexMatrix> kraus;
  for (int a = 0; a < k; ++a) kraus.push_back(std::sqrt(p[a] / total) * random_unitary(d, rng));
  return QuantumChannel(std::move(kraus));
}

}  // namespace oqec
