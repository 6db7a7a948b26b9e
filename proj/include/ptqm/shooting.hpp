#pragma once

#include "ptqm/hamiltonian.hpp"
#include "ptqm/types.hpp"

namespace ptqm::solver {

struct ShootingOptions {
  std::size_t steps_per_ray = 0;  // 0 = auto from the local WKB rate
  double wronskian_tol = 1e-10;
  std::size_t max_iterations = 60;
  double separation_tol = 1e-9;
};

/// Integrate psi'' = (V - E) psi from both endpoints toward the ray junction
/// with decaying WKB initial data (RK4 on the path parameter, renormalized
/// when the amplitude overflows) and return the Wronskian mismatch
/// (psi_L psi'_R - psi_R psi'_L) / |psi_L psi_R| at s = 0.
cplx shoot_residual(cplx energy, const HamiltonianSpec& spec, const ShootingOptions& opts = {});

/// Secant refinement of a Wronskian root. Throws NoConvergenceError when the
/// iteration stalls with |W| above tolerance, IntegrationFailureError on
/// non-finite integrations, ConvergedToDuplicateError when the root matches
/// an entry of `known` within the separation tolerance.
cplx find_eigenvalue(cplx guess, const HamiltonianSpec& spec, cspan known = {},
                     const ShootingOptions& opts = {});

}  // namespace ptqm::solver
