#pragma once

#include "json.hpp"
#include "ptqm/domain.hpp"
#include "ptqm/operator_kernel.hpp"
#include "ptqm/types.hpp"

namespace ptqm::solver {
struct EigenSolution;
}

namespace ptqm::ptalg {

/// <f|g>_PT = sum_k w_k [PT f]_k g_k along the contour.
cplx pt_inner(cspan f, cspan g, const model::SpatialDomain& d);

struct NormalizeResult {
  cvec state;         // phase-fixed, |<psi|psi>_PT| = 1
  int sign;           // sigma = sign of the real PT norm
  double pt_residual; // ||PT psi - psi|| / ||psi|| after the phase fix
};

/// Rotate the global phase so the PT eigenvalue becomes 1, scale the PT norm
/// to unit modulus, then pin the leftover sign by asking the value at the
/// largest-|psi| sample to lie in the right half-plane (ties broken upward).
/// Throws PtAsymmetricStateError when no phase makes the state PT-symmetric.
NormalizeResult normalize_eigenstate(cspan psi, const model::SpatialDomain& d,
                                     double asym_tol = 1e-6);

/// C(x_k, x_l) = sum_{n<M} psi_n(x_k) psi_n(x_l) from a normalized solution.
/// Throws UnnormalizedInputError if any retained PT norm is off unit modulus.
OperatorKernel c_kernel(const solver::EigenSolution& sol, std::size_t M = 0,
                        double norm_tol = 1e-6);

/// (C f)_k = sum_l w_l C(x_k, x_l) f_l: kernel application with quadrature.
cvec apply_c(const OperatorKernel& C, cspan f);

/// Same action computed in factored form from the eigenbasis, without
/// materializing the dense kernel. Used on the hot evolution paths.
cvec apply_c_factored(const solver::EigenSolution& sol, cspan f, std::size_t M = 0);

/// <f|g>_CPT = sum_k w_k [C PT f]_k g_k.
cplx cpt_inner(cspan f, cspan g, const model::SpatialDomain& d, const OperatorKernel& C);

/// Named residual with its tolerance; the building block of the verify suite.
struct VerificationReport {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  nlohmann::json context;

  static VerificationReport make(std::string name, double residual, double tolerance,
                                 nlohmann::json context = {});
};

enum class CompletenessForm {
  AlternatingSum,  // sum (-1)^n psi_n(x) psi_n(y) applied weakly to the probe
  CptKernel,       // sum [CPT psi_n](x) psi_n(y) with the C kernel built at M
};

/// Weak delta test: reconstruct the probe through the truncated completeness
/// kernel and report ||r - probe|| / ||probe||.
VerificationReport completeness_residual(const solver::EigenSolution& sol, cspan probe,
                                         std::size_t M = 0,
                                         CompletenessForm form = CompletenessForm::AlternatingSum,
                                         double tolerance = 1e-3);

/// || eta H eta^{-1} - H^dagger || / ||H|| with dagger the conjugate
/// transpose on the uniform grid. Throws SingularEtaError if eta is singular.
VerificationReport pseudo_hermiticity_residual(const OperatorKernel& H, const OperatorKernel& eta,
                                               double tolerance = 1e-10);

}  // namespace ptqm::ptalg
