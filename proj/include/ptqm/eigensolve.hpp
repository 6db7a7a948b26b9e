#pragma once

#include "ptqm/hamiltonian.hpp"
#include "ptqm/operator_kernel.hpp"
#include "ptqm/types.hpp"

namespace ptqm::solver {

struct SolverOptions {
  double phase_tol = 1e-6;       // relative bound on |Im E|
  double residual_tol = 1e-8;    // per-state relative operator residual
  double separation_tol = 1e-9;  // below this gap the spectrum counts as degenerate
  double pt_asym_tol = 1e-6;     // normalize_eigenstate phase-fix residual bound
  double unbounded_fraction = 0.25;  // Re E_0 < -fraction * max|V| flags an unbounded potential
};

/// Retained low-lying eigenpairs, PT-normalized, ordered by ascending Re E.
struct EigenSolution {
  double exponent = 0.0;  // N of the potential (0 when solved from a bare kernel)
  int stencil_order = 0;
  model::DomainPtr domain;
  cvec energies;
  std::vector<cvec> states;
  std::vector<int> pt_signs;               // sigma_n, expected (-1)^n
  std::vector<double> residuals;           // ||H psi - E psi|| / (||H|| ||psi||)
  std::vector<double> pt_phase_residuals;  // ||PT psi - psi|| after the phase fix
  std::vector<std::size_t> sign_mismatches;  // modes whose sigma_n != (-1)^n (diagnostic)
  std::size_t modes = 0;
};

/// Dense eigensolve of the kernel (LAPACK zgeev), keeping the M eigenpairs of
/// lowest real part. Throws BrokenPhaseError / UnboundedSpectrumError /
/// DegenerateSpectrumError as diagnosed. A broken (-1)^n sign ladder is
/// recorded in sign_mismatches rather than thrown; consumers that rely on
/// the ladder (the C kernel) refuse mismatched solutions themselves.
EigenSolution eigensolve(const OperatorKernel& H, std::size_t M, const SolverOptions& opts = {},
                         double exponent_hint = 0.0);

/// Convenience: assemble the Hamiltonian of the spec and solve.
EigenSolution eigensolve(const HamiltonianSpec& spec, std::size_t M,
                         const SolverOptions& opts = {});

enum class Phase { Unbroken, Broken };

struct PhaseReport {
  Phase phase = Phase::Unbroken;
  double max_im_ratio = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> conjugate_pairs;
};

/// Unbroken when every retained |Im E| is below tolerance; otherwise Broken
/// with the complex-conjugate pairs identified by E_i ~ conj(E_j).
PhaseReport classify_phase(const EigenSolution& sol, double phase_tol = 1e-6);

}  // namespace ptqm::solver
