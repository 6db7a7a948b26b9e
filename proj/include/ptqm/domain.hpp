#pragma once

#include <cstddef>
#include <memory>

#include "ptqm/types.hpp"

namespace ptqm::model {

enum class DomainKind { RealLine, WedgeRays };

/// A discretized integration path: either a symmetric real interval or two
/// straight rays joined at the origin, each tilted into the lower half-plane.
/// Samples are ordered by the path parameter s; the grid is symmetric and
/// skips s = 0, so the parity pairing is an exact index reversal.
struct SpatialDomain {
  DomainKind kind = DomainKind::RealLine;
  cvec points;                            // x_k along the path
  cvec weights;                           // quadrature weights for \int_c dx
  std::vector<std::size_t> parity_index;  // k -> index of the mirror sample of x_k
  cvec metric;                            // dx/ds at each sample
  std::vector<double> param;              // path parameter s_k, uniform spacing
  double extent = 0.0;                    // half-length L
  std::size_t count = 0;                  // number of samples
  double wedge_angle = 0.0;               // ray angle below each half-axis; 0 on the real line
  double exponent_hint = 0.0;             // N the wedge angle was chosen for (0 = none)

  double spacing() const { return param[1] - param[0]; }
};

using DomainPtr = std::shared_ptr<const SpatialDomain>;

/// Anti-Stokes wedge center for -(ix)^N: (N-2)/(N+2) * pi/2 below each half-axis.
double wedge_angle_for(double N);

/// Uniform symmetric grid on [-L, L] with composite trapezoid weights.
/// M_grid must be even (>= 4) so the origin is not a sample.
SpatialDomain make_real_domain(double L, std::size_t m_grid);

/// Two rays of length L at the wedge-center angle for exponent N. The grid in
/// the path parameter is the same as on the real line; per-ray trapezoid
/// weights carry the corner panel (0, h/2) by linear extrapolation.
SpatialDomain make_wedge_domain(double N, double L, std::size_t m_grid);

/// (P f)_k = f at the mirror sample of x_k.
cvec apply_parity(const SpatialDomain& d, cspan f);

/// (PT f)_k = conj(f at the mirror sample): conjugation composed with parity.
cvec apply_pt(const SpatialDomain& d, cspan f);

/// Sample position at an extended index; indices beyond [0, count) continue
/// the outer rays (used for ghost nodes next to the Dirichlet walls).
cplx extended_point(const SpatialDomain& d, std::ptrdiff_t index);

/// sqrt(sum |w_k| |f_k|^2): the quadrature L2 norm of a sampled function.
double weighted_norm(const SpatialDomain& d, cspan f);

/// Quadrature of a sampled integrand: sum w_k f_k.
cplx integrate(const SpatialDomain& d, cspan f);

}  // namespace ptqm::model
