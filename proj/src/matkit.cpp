#include "oqec/matkit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace oqec {

ComplexMatrix multiply(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.cols() != B.rows())
    throw DimensionError("multiply: inner dimensions disagree (" + std::to_string(A.cols()) +
                         " vs " + std::to_string(B.rows()) + ")");
  return A * B;
}

ComplexMatrix tensor(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

ComplexMatrix partial_trace_A(const ComplexMatrix& M, Eigen::Index dimA, Eigen::Index dimB) {
  if (M.rows() != dimA * dimB || M.cols() != dimA * dimB)
    throw DimensionError("partial_trace_A: matrix is not (dimA*dimB) square");
  ComplexMatrix out = ComplexMatrix::Zero(dimB, dimB);
  for (Eigen::Index k = 0; k < dimA; ++k)
    out += M.block(k * dimB, k * dimB, dimB, dimB);
  return out;
}

ComplexMatrix partial_trace_B(const ComplexMatrix& M, Eigen::Index dimA, Eigen::Index dimB) {
  if (M.rows() != dimA * dimB || M.cols() != dimA * dimB)
    throw DimensionError("partial_trace_B: matrix is not (dimA*dimB) square");
  ComplexMatrix out = ComplexMatrix::Zero(dimA, dimA);
  for (Eigen::Index i = 0; i < dimA; ++i)
    for (Eigen::Index j = 0; j < dimA; ++j)
      out(i, j) = M.block(i * dimB, j * dimB, dimB, dimB).trace();
  return out;
}

Complex hs_inner(const ComplexMatrix& A, const ComplexMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionError("hs_inner: shapes disagree");
  return (A.adjoint() * B).trace();
}

double fro_norm(const ComplexMatrix& A) { return A.norm(); }

bool is_hermitian(const ComplexMatrix& M, const Tolerance& tol) {
  return M.rows() == M.cols() && (M - M.adjoint()).norm() <= tol.atol * std::max(1.0, M.norm());
}

bool is_projector(const ComplexMatrix& P, const Tolerance& tol) {
  return is_hermitian(P, tol) && (P * P - P).norm() <= tol.atol * std::max(1.0, P.norm());
}

bool is_unitary(const ComplexMatrix& U, const Tolerance& tol) {
  if (U.rows() != U.cols()) return false;
  ComplexMatrix G = U.adjoint() * U;
  return (G - ComplexMatrix::Identity(U.cols(), U.cols())).norm() <= tol.atol * U.cols();
}

HermitianEig eig_hermitian(const ComplexMatrix& M, const Tolerance& tol) {
  if (M.rows() != M.cols()) throw DimensionError("eig_hermitian: matrix not square");
  if ((M - M.adjoint()).norm() > tol.atol * std::max(1.0, M.norm()))
    throw InvalidInputError("eig_hermitian: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((M + M.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw SynthesisError("eig_hermitian: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::Index numerical_rank(const ComplexMatrix& M, const Tolerance& tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(M);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cutoff = tol.rank_rtol * s(0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return r;
}

ComplexMatrix null_space(const ComplexMatrix& M, const Tolerance& tol) {
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cutoff = tol.rank_rtol * smax;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

ComplexMatrix polar_isometry(const ComplexMatrix& M, const Tolerance& tol) {
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cutoff = tol.rank_rtol * smax;
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();
}

double span_residual(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& X) {
  ComplexMatrix rem = X;
  for (const auto& b : basis) rem -= hs_inner(b, rem) * b;
  return rem.norm();
}

bool in_span(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& X,
             const Tolerance& tol) {
  return span_residual(basis, X) <= tol.atol * std::max(1.0, X.norm());
}

std::vector<ComplexMatrix> orthonormalize(const std::vector<ComplexMatrix>& mats,
                                          const Tolerance& tol) {
  std::vector<ComplexMatrix> basis;
  for (const auto& m : mats) {
    const double scale = std::max(1.0, m.norm());
    ComplexMatrix rem = m;
    for (const auto& b : basis) rem -= hs_inner(b, rem) * b;
    for (const auto& b : basis) rem -= hs_inner(b, rem) * b;  // re-orthogonalization pass
    if (rem.norm() > tol.atol * scale) basis.push_back(rem / rem.norm());
  }
  return basis;
}

double span_distance(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  double worst = 0.0;
  for (const auto& x : a) worst = std::max(worst, span_residual(b, x) / std::max(1.0, x.norm()));
  for (const auto& x : b) worst = std::max(worst, span_residual(a, x) / std::max(1.0, x.norm()));
  return worst;
}

ComplexVector vec(const ComplexMatrix& M) {
  return Eigen::Map<const ComplexVector>(M.data(), M.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec: size disagrees with shape");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = Complex(gauss(rng), gauss(rng));
  return out;
}

ComplexMatrix random_hermitian(Eigen::Index d, Rng& rng) {
  ComplexMatrix g = random_matrix(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

ComplexMatrix random_unitary(Eigen::Index d, Rng& rng) {
  ComplexMatrix g = random_matrix(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the draw depends only on the rng stream.
  for (Eigen::Index j = 0; j < d; ++j) {
    Complex rjj = r(j, j);
    q.col(j) *= std::abs(rjj) > 0 ? rjj / std::abs(rjj) : Complex(1, 0);
  }
  return q;
}

ComplexMatrix random_projector(Eigen::Index d, Eigen::Index rank, Rng& rng) {
  ComplexMatrix V = random_isometry(d, rank, rng);
  return V * V.adjoint();
}

ComplexMatrix random_isometry(Eigen::Index d, Eigen::Index k, Rng& rng) {
  if (k > d) throw DimensionError("random_isometry: k exceeds d");
  return random_unitary(d, rng).leftCols(k);
}

}  // namespace oqec
