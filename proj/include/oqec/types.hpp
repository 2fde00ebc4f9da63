#ifndef OQEC_TYPES_HPP
#define OQEC_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace oqec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds used throughout the library.
///
/// `atol` is an absolute Frobenius-norm threshold for residual checks;
/// `rank_rtol` is a relative singular-value cutoff for rank decisions.
struct Tolerance {
  double atol = 1e-9;
  double rank_rtol = 1e-8;

  Tolerance() = default;
  Tolerance(double atol_, double rank_rtol_) : atol(atol_), rank_rtol(rank_rtol_) {
    if (!(atol > 0.0)) throw std::invalid_argument("Tolerance: atol must be positive");
    if (!(rank_rtol > 0.0 && rank_rtol < 1.0))
      throw std::invalid_argument("Tolerance: rank_rtol must lie in (0, 1)");
  }
};

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible matrix shapes.
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// Input violates a structural precondition (non-Hermitian, non-projector,
/// non-unitary, non-PSD, parameter out of range, ...).
class InvalidInputError : public Error {
public:
  explicit InvalidInputError(const std::string& what) : Error(what) {}
};

/// Kraus set fails trace preservation beyond tolerance.
class TracePreservationError : public Error {
public:
  TracePreservationError(const std::string& what, double residual_)
      : Error(what), residual(residual_) {}
  double residual;
};

/// Operation requires a unital channel.
class NotUnitalError : public Error {
public:
  NotUnitalError(const std::string& what, double residual_)
      : Error(what), residual(residual_) {}
  double residual;
};

/// Correctability / noiselessness precondition does not hold.
class NotCorrectableError : public Error {
public:
  explicit NotCorrectableError(const std::string& what) : Error(what) {}
};

/// A numerical construction step degenerated (spectral splitting, polar
/// step, ...). Usually retryable with a different seed.
class SynthesisError : public Error {
public:
  explicit SynthesisError(const std::string& what) : Error(what) {}
};

}  // namespace oqec

#endif
