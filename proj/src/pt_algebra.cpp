#include "ptqm/pt_algebra.hpp"

#include <algorithm>
#include <cmath>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "ptqm/eigensolve.hpp"
#include "ptqm/kernels.hpp"

namespace ptqm::ptalg {
namespace {

// Peak sample: largest |psi|, ties resolved toward the largest Re x so the
// convention is stable when two mirror lobes have equal magnitude.
std::size_t peak_sample(const model::SpatialDomain& d, cspan psi) {
  double peak = 0.0;
  for (const cplx& z : psi) peak = std::max(peak, std::abs(z));
  std::size_t best = 0;
  double best_re = -1e300;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    if (std::abs(psi[k]) >= peak * (1.0 - 1e-8) && d.points[k].real() > best_re) {
      best = k;
      best_re = d.points[k].real();
    }
  }
  return best;
}

bool as_permutation(const OperatorKernel& eta, std::vector<std::size_t>& perm) {
  perm.assign(eta.dim, 0);
  for (std::size_t r = 0; r < eta.dim; ++r) {
    std::size_t hits = 0, col = 0;
    for (std::size_t c = 0; c < eta.dim; ++c) {
      const cplx z = eta.at(r, c);
      if (z == cplx(1.0, 0.0)) {
        ++hits;
        col = c;
      } else if (z != cplx(0.0, 0.0)) {
        return false;
      }
    }
    if (hits != 1) return false;
    perm[r] = col;
  }
  std::vector<bool> seen(eta.dim, false);
  for (std::size_t c : perm) {
    if (seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

cvec dense_inverse(const OperatorKernel& eta) {
  cvec a = eta.entries;
  const auto n = static_cast<lapack_int>(eta.dim);
  std::vector<lapack_int> ipiv(eta.dim);
  lapack_int info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, a.data(), n, ipiv.data());
  if (info != 0) throw SingularEtaError("pseudo-hermiticity: eta is singular on the grid");
  info = LAPACKE_zgetri(LAPACK_ROW_MAJOR, n, a.data(), n, ipiv.data());
  if (info != 0) throw SingularEtaError("pseudo-hermiticity: eta could not be inverted");
  return a;
}

cvec matmul(cspan A, cspan B, std::size_t n) {
  // C = A B, row-major; column-at-a-time through the matvec kernel.
  cvec bt(n * n), col(n), out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bt[j * n + i] = B[i * n + j];
  for (std::size_t j = 0; j < n; ++j) {
    kernels::active().matvec(A, n, n, cspan(bt.data() + j * n, n), col);
    for (std::size_t i = 0; i < n; ++i) out[i * n + j] = col[i];
  }
  return out;
}

}  // namespace

cplx pt_inner(cspan f, cspan g, const model::SpatialDomain& d) {
  if (f.size() != d.count || g.size() != d.count)
    throw std::invalid_argument("pt_inner: sample count mismatch");
  const cvec ptf = model::apply_pt(d, f);
  return kernels::active().dot3(d.weights, ptf, g);
}

NormalizeResult normalize_eigenstate(cspan psi, const model::SpatialDomain& d, double asym_tol) {
  if (psi.size() != d.count) throw std::invalid_argument("normalize: sample count mismatch");
  const auto& k = kernels::active();

  // PT psi = (conj overlap / |overlap|) psi for an eigenstate of PT; rotating
  // by half the overlap phase sends the PT eigenvalue to 1.
  cvec pt = model::apply_pt(d, psi);
  cplx overlap{};
  for (std::size_t i = 0; i < d.count; ++i) overlap += std::conj(psi[i]) * pt[i];
  const double phi = std::arg(overlap) / 2.0;
  const cplx rot = std::exp(cplx(0.0, phi));

  cvec state(d.count);
  for (std::size_t i = 0; i < d.count; ++i) state[i] = rot * psi[i];

  pt = model::apply_pt(d, state);
  double diff2 = 0.0;
  for (std::size_t i = 0; i < d.count; ++i) diff2 += std::norm(pt[i] - state[i]);
  const double residual = std::sqrt(diff2 / k.sum_abs2(state));
  if (residual > asym_tol)
    throw PtAsymmetricStateError(
        "normalize: state is not PT-symmetric for any phase (broken symmetry or unconverged)",
        residual);

  const cplx nu = k.dot3(d.weights, state, state);  // PT norm of a PT-symmetric state
  const int sign = nu.real() >= 0.0 ? 1 : -1;
  const double amp = 1.0 / std::sqrt(std::abs(nu));

  const cplx peak = state[peak_sample(d, state)];
  double flip = 1.0;
  if (peak.real() < -1e-12 * std::abs(peak)) flip = -1.0;
  else if (std::abs(peak.real()) <= 1e-12 * std::abs(peak) && peak.imag() < 0.0) flip = -1.0;

  const double scale = amp * flip;
  for (cplx& z : state) z *= scale;
  return {std::move(state), sign, residual};
}

OperatorKernel c_kernel(const solver::EigenSolution& sol, std::size_t M, double norm_tol) {
  if (M == 0) M = sol.modes;
  if (M > sol.modes) throw std::invalid_argument("c_kernel: M exceeds retained modes");
  const model::SpatialDomain& d = *sol.domain;
  std::vector<std::size_t> bad;
  for (std::size_t n : sol.sign_mismatches)
    if (n < M) bad.push_back(n);
  if (!bad.empty())
    throw SignPatternError("c_kernel: PT-norm signs below M break the alternating ladder",
                           std::move(bad));
  for (std::size_t n = 0; n < M; ++n) {
    const cplx nu = pt_inner(sol.states[n], sol.states[n], d);
    if (std::abs(std::abs(nu) - 1.0) > norm_tol)
      throw UnnormalizedInputError("c_kernel: eigenstate " + std::to_string(n) +
                                   " is not PT-normalized");
  }
  OperatorKernel C = zero_kernel(KernelLabel::C, sol.domain);
  const auto& k = kernels::active();
  for (std::size_t n = 0; n < M; ++n) {
    const cvec& psi = sol.states[n];
    for (std::size_t r = 0; r < d.count; ++r)
      k.axpy(psi[r], psi, mspan(C.entries.data() + r * d.count, d.count));
  }
  return C;
}

cvec apply_c(const OperatorKernel& C, cspan f) {
  const model::SpatialDomain& d = *C.domain;
  if (f.size() != d.count) throw std::invalid_argument("apply_c: sample count mismatch");
  cvec wf(d.count);
  const auto& k = kernels::active();
  k.hadamard(d.weights, f, wf);
  cvec out(d.count);
  k.matvec(C.entries, d.count, d.count, wf, out);
  return out;
}

cvec apply_c_factored(const solver::EigenSolution& sol, cspan f, std::size_t M) {
  if (M == 0) M = sol.modes;
  const model::SpatialDomain& d = *sol.domain;
  if (f.size() != d.count) throw std::invalid_argument("apply_c: sample count mismatch");
  const auto& k = kernels::active();
  cvec out(d.count, cplx{});
  for (std::size_t n = 0; n < M; ++n) {
    const cplx b = k.dot3(d.weights, sol.states[n], f);
    k.axpy(b, sol.states[n], out);
  }
  return out;
}

cplx cpt_inner(cspan f, cspan g, const model::SpatialDomain& d, const OperatorKernel& C) {
  if (f.size() != d.count || g.size() != d.count)
    throw std::invalid_argument("cpt_inner: sample count mismatch");
  const cvec cpt = apply_c(C, model::apply_pt(d, f));
  return kernels::active().dot3(d.weights, cpt, g);
}

VerificationReport VerificationReport::make(std::string name, double residual, double tolerance,
                                            nlohmann::json context) {
  VerificationReport r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = residual <= tolerance;
  r.context = std::move(context);
  return r;
}

VerificationReport completeness_residual(const solver::EigenSolution& sol, cspan probe,
                                         std::size_t M, CompletenessForm form, double tolerance) {
  if (M == 0) M = sol.modes;
  if (M > sol.modes) throw std::invalid_argument("completeness: M exceeds retained modes");
  const model::SpatialDomain& d = *sol.domain;
  const auto& k = kernels::active();

  cvec recon(d.count, cplx{});
  for (std::size_t n = 0; n < M; ++n) {
    const cplx b = k.dot3(d.weights, sol.states[n], probe);
    if (form == CompletenessForm::AlternatingSum) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      k.axpy(sign * b, sol.states[n], recon);
    } else {
      // sum_n [CPT psi_n](x) psi_n(y): apply C (built at this M) to PT psi_n.
      const cvec cpt = apply_c_factored(sol, model::apply_pt(d, sol.states[n]), M);
      k.axpy(b, cpt, recon);
    }
  }
  double diff2 = 0.0;
  for (std::size_t i = 0; i < d.count; ++i)
    diff2 += std::abs(d.weights[i]) * std::norm(recon[i] - probe[i]);
  const double residual = std::sqrt(diff2) / model::weighted_norm(d, probe);

  const char* name = form == CompletenessForm::AlternatingSum ? "completeness_alternating_sum"
                                                               : "completeness_cpt_form";
  return VerificationReport::make(name, residual, tolerance, {{"M", M}});
}

VerificationReport pseudo_hermiticity_residual(const OperatorKernel& H, const OperatorKernel& eta,
                                               double tolerance) {
  if (eta.dim != H.dim) throw std::invalid_argument("pseudo-hermiticity: dimension mismatch");
  const std::size_t n = H.dim;

  cvec transformed;  // eta H eta^{-1}
  std::vector<std::size_t> perm;
  if (as_permutation(eta, perm)) {
    transformed.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        transformed[i * n + j] = H.entries[perm[i] * n + perm[j]];
  } else {
    const cvec inv = dense_inverse(eta);
    transformed = matmul(matmul(eta.entries, H.entries, n), inv, n);
  }

  double diff2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      diff2 += std::norm(transformed[i * n + j] - std::conj(H.at(j, i)));
  const double residual = std::sqrt(diff2) / H.frobenius_norm();
  return VerificationReport::make("pseudo_hermiticity", residual, tolerance);
}

}  // namespace ptqm::ptalg
