#pragma once

#include "ptqm/eigensolve.hpp"
#include "ptqm/operator_kernel.hpp"
#include "ptqm/pt_algebra.hpp"
#include "ptqm/types.hpp"

namespace ptqm::dynamics {

/// Psi(x, t) on the domain samples, with its eigenbasis coefficients when the
/// state came from an expansion. norm_cpt caches <Psi|Psi>_CPT: evolve fills
/// it from the coefficients, trace building from the quadrature.
struct WaveState {
  cvec amplitudes;
  double time = 0.0;
  cvec coefficients;
  cplx norm_cpt{};
};

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<WaveState> states;  // populated only when requested
  std::vector<cplx> norms;        // quadrature <Psi|Psi>_CPT per instant
  std::vector<cplx> x_expect;
  std::vector<cplx> p_expect;
  std::vector<cplx> dvdx_expect;
};

struct ExpandResult {
  cvec coefficients;           // c_n = (-1)^n <psi_n|Psi0>_PT
  double truncation_residual;  // ||Psi0 - sum c_n psi_n|| / ||Psi0||
};

/// Expand a sampled state over the retained eigenbasis. Throws
/// PoorRepresentationError when the truncation residual exceeds the bound
/// (pass enforce=false to inspect bad expansions).
ExpandResult expand_state(cspan psi0, const solver::EigenSolution& sol, double bound = 1e-3,
                          bool enforce = true);

/// c_n(t) = c_n exp(-i E_n (t - t0)); exact in the truncated span.
WaveState evolve(cspan coefficients, const solver::EigenSolution& sol, double t0, double t);

/// Max drift of the quadrature CPT norm over the sampled instants.
ptalg::VerificationReport unitarity_trace(cspan coefficients, const solver::EigenSolution& sol,
                                          std::span<const double> times, double tolerance = 1e-8);

struct DensityResult {
  cvec density;          // P_k = [C PT Psi]_k Psi_k (complex in general)
  cplx integral;         // sum w_k P_k
  double max_imag;       // max |Im P_k|
  ptalg::VerificationReport report;
};

/// Probability density of a CPT-normalized state. Throws NotNormalizedError
/// when the integral strays from 1 beyond the tolerance.
DensityResult probability_density(const WaveState& state, const solver::EigenSolution& sol,
                                  double tolerance = 1e-6, bool enforce = true);

/// j = -i { [CPT Psi] (D Psi) - (D [CPT Psi]) Psi } with D the first
/// derivative along the path (hbar/(2m) = 1 in these units).
cvec probability_current(cspan psi, cspan cpt_psi, const BandedOperator& d1);

/// Convenience: computes the CPT image from the solution's eigenbasis.
cvec probability_current(cspan psi, const solver::EigenSolution& sol, const BandedOperator& d1);

/// Pointwise continuity residual max_{t,k} |dP_k/dt + (D j)_k| over interior
/// instants (central time differences). The integrated form of the same
/// statement, max_t |d/dt int P + int dj/dx|, is carried in the context;
/// it sits at round-off because the total probability is exactly conserved.
/// Requires a trace with stored states; throws InsufficientSamplesError.
ptalg::VerificationReport continuity_residual(const EvolutionTrace& trace,
                                              const solver::EigenSolution& sol,
                                              const BandedOperator& d1, double tolerance = 1e-5);

/// <A>_CPT = sum w_k [C PT Psi]_k (A Psi)_k for a CPT-normalized state.
cplx expectation(const OperatorKernel& op, cspan psi, const OperatorKernel& C,
                 const model::SpatialDomain& d);

/// Weak residual of [H, x] = -i hbar p / m (= -2 D in these units) over the
/// first M_interior modes: max_{m,n} |<psi_m|([H,X] + 2i P)psi_n>_CPT|.
ptalg::VerificationReport commutator_hx_residual(const OperatorKernel& H, const OperatorKernel& X,
                                                 const OperatorKernel& Pmom,
                                                 const solver::EigenSolution& sol,
                                                 std::size_t M_interior, double tolerance = 1e-6);

struct EhrenfestReports {
  ptalg::VerificationReport x;  // d<x>/dt = <p>/m
  ptalg::VerificationReport p;  // d<p>/dt = -<dV/dx>
};

/// Central-difference check of both Ehrenfest equalities on a uniform trace
/// (>= 5 instants); both sides compared as complex numbers.
EhrenfestReports ehrenfest_report(const EvolutionTrace& trace, double tolerance = 1e-4);

/// Evolve by eigenphase rotation, recording observables per instant.
EvolutionTrace make_trace(cspan coefficients, const solver::EigenSolution& sol, double t0,
                          double t1, double dt, bool store_states = false);

/// Crank-Nicolson grid propagator, the flagged cross-check for the exact
/// eigenphase evolution. Steps Psi on the full grid with the banded H.
cvec crank_nicolson_evolve(const BandedOperator& h, cspan psi0, double t0, double t1, double dt);

OperatorKernel position_kernel(model::DomainPtr domain);
OperatorKernel momentum_kernel(model::DomainPtr domain, int order = 6);
OperatorKernel dvdx_kernel(double N, model::DomainPtr domain);

/// Sampled Gaussian exp(-(x - center)^2 / (2 width^2) + i momentum x).
cvec gaussian_state(const model::SpatialDomain& d, double center, double width, double momentum);

}  // namespace ptqm::dynamics
