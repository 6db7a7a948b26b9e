#include "ptqm/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "ptqm/kernels.hpp"
#include "ptqm/pt_algebra.hpp"

namespace ptqm::solver {
namespace {

double max_abs_potential(const OperatorKernel& H) {
  double m = 0.0;
  for (std::size_t k = 0; k < H.dim; ++k) m = std::max(m, std::abs(H.at(k, k)));
  return m;
}

bool commutes_with_pt(const OperatorKernel& H) {
  const auto& par = H.domain->parity_index;
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < H.dim; ++i)
    for (std::size_t j = 0; j < H.dim; ++j) {
      scale = std::max(scale, std::abs(H.at(i, j)));
      diff = std::max(diff, std::abs(std::conj(H.at(par[i], par[j])) - H.at(i, j)));
    }
  return diff <= 1e-12 * scale;
}

struct RawEigen {
  cvec values;
  // dense column fetch of the eigenvector belonging to values[idx]
  std::function<cvec(std::size_t)> vector;
};

// Plain complex solve for kernels without the PT structure.
RawEigen solve_complex(const OperatorKernel& H) {
  const std::size_t n = H.dim;
  cvec a = H.entries;  // zgeev overwrites its input
  auto w = std::make_shared<cvec>(n);
  auto vr = std::make_shared<cvec>(n * n);
  const int info = LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'V', static_cast<lapack_int>(n),
                                 a.data(), static_cast<lapack_int>(n), w->data(), nullptr,
                                 static_cast<lapack_int>(n), vr->data(),
                                 static_cast<lapack_int>(n));
  if (info != 0) throw Error("eigensolve: zgeev failed with info=" + std::to_string(info));
  RawEigen out;
  out.values = *w;
  out.vector = [n, vr](std::size_t idx) {
    cvec v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = (*vr)[k * n + idx];
    return v;
  };
  return out;
}

// PT-adapted solve: in the basis of parity-even and i*(parity-odd) samples a
// PT-symmetric kernel becomes a real matrix (PT turns into plain complex
// conjugation). Real eigenvalues of the real matrix are exactly real, their
// vectors are real, and the back-transformed eigenvectors are exactly
// PT-symmetric. This is what keeps the ill-conditioned high modes of the
// imaginary potentials usable in double precision.
RawEigen solve_pt_adapted(const OperatorKernel& H) {
  const std::size_t n = H.dim;
  const std::size_t m = n / 2;
  const auto& par = H.domain->parity_index;

  std::vector<double> hr(n * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const cplx direct = H.at(i, j);
      const cplx mirror = H.at(i, par[j]);
      hr[i * n + j] = direct.real() + mirror.real();
      hr[i * n + (m + j)] = -direct.imag() + mirror.imag();
      hr[(m + i) * n + j] = direct.imag() + mirror.imag();
      hr[(m + i) * n + (m + j)] = direct.real() - mirror.real();
    }

  std::vector<double> wr(n), wi(n), vr(n * n);
  const int info = LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'V', static_cast<lapack_int>(n),
                                 hr.data(), static_cast<lapack_int>(n), wr.data(), wi.data(),
                                 nullptr, static_cast<lapack_int>(n), vr.data(),
                                 static_cast<lapack_int>(n));
  if (info != 0) throw Error("eigensolve: dgeev failed with info=" + std::to_string(info));

  auto values = std::make_shared<cvec>(n);
  for (std::size_t k = 0; k < n; ++k) (*values)[k] = cplx(wr[k], wi[k]);
  auto vecs = std::make_shared<std::vector<double>>(std::move(vr));
  auto wi_copy = std::make_shared<std::vector<double>>(wi);

  RawEigen out;
  out.values = *values;
  out.vector = [n, m, par, values, vecs, wi_copy](std::size_t idx) {
    cvec v(n);
    const auto& vr_ref = *vecs;
    if ((*wi_copy)[idx] == 0.0) {
      // real eigenvalue: real vector u -> v_k = (u_k + i u_{m+k})/sqrt(2)
      for (std::size_t k = 0; k < m; ++k) {
        const double ue = vr_ref[k * n + idx];
        const double uo = vr_ref[(m + k) * n + idx];
        v[k] = cplx(ue, uo) / std::sqrt(2.0);
        v[par[k]] = cplx(ue, -uo) / std::sqrt(2.0);
      }
      return v;
    }
    // complex pair: columns idx (u) and idx+1 (w) hold u + i w for wi > 0
    const std::size_t base = (*wi_copy)[idx] > 0.0 ? idx : idx - 1;
    const double sign = (*wi_copy)[idx] > 0.0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < m; ++k) {
      const cplx ue(vr_ref[k * n + base], sign * vr_ref[k * n + base + 1]);
      const cplx uo(vr_ref[(m + k) * n + base], sign * vr_ref[(m + k) * n + base + 1]);
      v[k] = (ue + cplx(0.0, 1.0) * uo) / std::sqrt(2.0);
      v[par[k]] = (ue - cplx(0.0, 1.0) * uo) / std::sqrt(2.0);
    }
    return v;
  };
  return out;
}

}  // namespace

EigenSolution eigensolve(const OperatorKernel& H, std::size_t M, const SolverOptions& opts,
                         double exponent_hint) {
  const std::size_t n = H.dim;
  if (M == 0) throw std::invalid_argument("eigensolve: M must be positive");
  if (M > n / 4)
    throw std::invalid_argument("eigensolve: M must not exceed M_grid/4 (unresolved modes)");

  const RawEigen raw = commutes_with_pt(H) ? solve_pt_adapted(H) : solve_complex(H);
  const cvec& w = raw.values;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (w[i].real() != w[j].real()) return w[i].real() < w[j].real();
    return w[i].imag() < w[j].imag();
  });

  EigenSolution sol;
  sol.exponent = exponent_hint;
  sol.domain = H.domain;
  sol.modes = M;
  sol.energies.resize(M);
  for (std::size_t m = 0; m < M; ++m) sol.energies[m] = w[order[m]];

  // Phase diagnostics before any normalization.
  std::vector<cplx> offenders;
  for (const cplx& e : sol.energies)
    if (std::abs(e.imag()) > opts.phase_tol * std::max(1.0, std::abs(e.real())))
      offenders.push_back(e);
  if (!offenders.empty())
    throw BrokenPhaseError("eigensolve: retained eigenvalues have imaginary parts (broken phase)",
                           std::move(offenders));

  const double vscale = max_abs_potential(H);
  if (vscale > 0.0 && sol.energies.front().real() < -opts.unbounded_fraction * vscale)
    throw UnboundedSpectrumError(
        "eigensolve: spectrum dives to the potential floor; the potential is unbounded below "
        "on this contour");

  for (std::size_t m = 0; m + 1 < M; ++m)
    if (std::abs(sol.energies[m + 1] - sol.energies[m]) < opts.separation_tol)
      throw DegenerateSpectrumError("eigensolve: retained eigenvalues closer than the separation tolerance");

  // Relative operator residuals ||H v - E v|| / (||H||_F ||v||).
  const double hnorm = H.frobenius_norm();
  sol.states.resize(M);
  sol.pt_signs.resize(M);
  sol.residuals.resize(M);
  sol.pt_phase_residuals.resize(M);
  cvec hv(n);
  for (std::size_t m = 0; m < M; ++m) {
    const cvec v = raw.vector(order[m]);
    kernels::active().matvec(H.entries, n, n, v, hv);
    double r2 = 0.0, v2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      r2 += std::norm(hv[k] - sol.energies[m] * v[k]);
      v2 += std::norm(v[k]);
    }
    sol.residuals[m] = std::sqrt(r2 / v2) / hnorm;
    if (sol.residuals[m] > opts.residual_tol)
      throw Error("eigensolve: eigenpair residual above solver tolerance");

    ptalg::NormalizeResult nr = ptalg::normalize_eigenstate(v, *H.domain, opts.pt_asym_tol);
    sol.states[m] = std::move(nr.state);
    sol.pt_signs[m] = nr.sign;
    sol.pt_phase_residuals[m] = nr.pt_residual;
  }

  for (std::size_t m = 0; m < M; ++m)
    if (sol.pt_signs[m] != (m % 2 == 0 ? 1 : -1)) sol.sign_mismatches.push_back(m);

  return sol;
}

EigenSolution eigensolve(const HamiltonianSpec& spec, std::size_t M, const SolverOptions& opts) {
  EigenSolution sol = eigensolve(hamiltonian_matrix(spec), M, opts, spec.exponent);
  sol.stencil_order = spec.stencil_order;
  return sol;
}

PhaseReport classify_phase(const EigenSolution& sol, double phase_tol) {
  PhaseReport report;
  std::vector<std::size_t> complex_modes;
  for (std::size_t m = 0; m < sol.energies.size(); ++m) {
    const cplx e = sol.energies[m];
    const double ratio = std::abs(e.imag()) / std::max(1.0, std::abs(e.real()));
    report.max_im_ratio = std::max(report.max_im_ratio, ratio);
    if (ratio > phase_tol) complex_modes.push_back(m);
  }
  if (complex_modes.empty()) return report;

  report.phase = Phase::Broken;
  std::vector<bool> used(sol.energies.size(), false);
  for (std::size_t i : complex_modes) {
    if (used[i]) continue;
    for (std::size_t j : complex_modes) {
      if (j == i || used[j]) continue;
      const cplx diff = sol.energies[i] - std::conj(sol.energies[j]);
      if (std::abs(diff) < 1e-6 * std::max(1.0, std::abs(sol.energies[i]))) {
        report.conjugate_pairs.emplace_back(std::min(i, j), std::max(i, j));
        used[i] = used[j] = true;
        break;
      }
    }
  }
  return report;
}

}  // namespace ptqm::solver
