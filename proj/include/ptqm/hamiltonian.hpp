#pragma once

#include "ptqm/domain.hpp"
#include "ptqm/operator_kernel.hpp"
#include "ptqm/types.hpp"

namespace ptqm::solver {

/// H = p^2 - (ix)^N on a discretized contour; with hbar = 1, m = 1/2 the
/// matrix is -d2/dx2 - (ix)^N along the path.
struct HamiltonianSpec {
  double exponent = 2.0;
  model::DomainPtr domain;
  cvec potential;         // V_k = -(i x_k)^N
  int stencil_order = 6;  // symmetric central stencil accuracy: 2, 4 or 6
};

HamiltonianSpec make_hamiltonian_spec(double N, model::DomainPtr domain, int stencil_order = 6);

/// -(i x)^N. Integer N uses exact repeated multiplication (keeps V real on
/// the real line for even N); otherwise the principal branch of the power.
cplx potential_value(double N, cplx x);

/// dV/dx = -i N (ix)^{N-1}, same branch rules.
cplx potential_derivative(double N, cplx x);

/// Weights of the m-th derivative at z0 from arbitrary (complex) nodes.
/// Exact for polynomials of degree < nodes.size().
cvec fornberg_weights(cplx z0, cspan nodes, int m);

/// Derivative operator along the path: centered stencils of the given order;
/// rows whose window crosses the ray junction use the true complex node
/// positions, and coefficients falling outside the grid are dropped
/// (Dirichlet walls one spacing beyond the end samples).
BandedOperator derivative_operator(const model::SpatialDomain& d, int derivative, int order);

BandedOperator hamiltonian_banded(const HamiltonianSpec& spec);

/// Dense matrix of H on the domain samples.
OperatorKernel hamiltonian_matrix(const HamiltonianSpec& spec);

}  // namespace ptqm::solver
