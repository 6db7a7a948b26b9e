#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ptqm {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using cspan = std::span<const cplx>;
using mspan = std::span<cplx>;

/// Units: hbar = 1, m = 1/2, so the Schrodinger operator is exactly
/// -d2/dx2 + V(x) and the current prefactor hbar/(2m) equals 1.
struct PhysicalConstants {
  static constexpr double hbar = 1.0;
  static constexpr double mass = 0.5;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Retained eigenvalues left the real axis: PT symmetry is spontaneously
/// broken (or the contour is wrong for this N). Carries the offenders.
struct BrokenPhaseError : Error {
  std::vector<cplx> offending;
  explicit BrokenPhaseError(std::string msg, std::vector<cplx> off)
      : Error(std::move(msg)), offending(std::move(off)) {}
};

/// The discrete spectrum dives far below the potential scale: the potential
/// is unbounded below on this contour (e.g. -x^4 on the real line).
struct UnboundedSpectrumError : Error {
  using Error::Error;
};

struct DegenerateSpectrumError : Error {
  using Error::Error;
};

struct NoConvergenceError : Error {
  using Error::Error;
};

struct ConvergedToDuplicateError : Error {
  cplx value;
  ConvergedToDuplicateError(std::string msg, cplx v) : Error(std::move(msg)), value(v) {}
};

struct IntegrationFailureError : Error {
  using Error::Error;
};

/// A state whose minimal-phase PT residual is too large to normalize.
struct PtAsymmetricStateError : Error {
  double residual;
  PtAsymmetricStateError(std::string msg, double r) : Error(std::move(msg)), residual(r) {}
};

/// The measured PT-norm signs do not follow the alternating pattern.
struct SignPatternError : Error {
  std::vector<std::size_t> mismatched;
  SignPatternError(std::string msg, std::vector<std::size_t> idx)
      : Error(std::move(msg)), mismatched(std::move(idx)) {}
};

struct UnnormalizedInputError : Error {
  using Error::Error;
};

struct NotNormalizedError : Error {
  using Error::Error;
};

struct PoorRepresentationError : Error {
  double residual;
  PoorRepresentationError(std::string msg, double r) : Error(std::move(msg)), residual(r) {}
};

struct SingularEtaError : Error {
  using Error::Error;
};

struct InsufficientSamplesError : Error {
  using Error::Error;
};

}  // namespace ptqm
