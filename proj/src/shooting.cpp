#include "ptqm/shooting.hpp"

#include <cmath>

namespace ptqm::solver {
namespace {

struct RayEnd {
  cplx value;       // u at s = 0
  cplx slope_x;     // dpsi/dx at s = 0
};

struct Ray {
  double N;
  cplx direction;  // gamma' on this ray
  cplx rhs_factor; // gamma'^2

  cplx second_derivative(double s, cplx u, cplx energy) const {
    const cplx x = s * direction;
    return (potential_value(N, x) - energy) * rhs_factor * u;
  }
};

// March one ray from s = |L| (or -|L|) to 0 following the solution that
// decays outward; it grows inward, which keeps the integration stable.
RayEnd integrate_ray(int side, double length, std::size_t steps, cplx energy,
                     const HamiltonianSpec& spec) {
  const double theta = spec.domain->wedge_angle;
  Ray ray;
  ray.N = spec.exponent;
  ray.direction = std::exp(cplx(0.0, side > 0 ? -theta : theta));
  ray.rhs_factor = ray.direction * ray.direction;

  double s = side > 0 ? length : -length;
  const double h = (side > 0 ? -1.0 : 1.0) * length / static_cast<double>(steps);

  // Decay rate r solves r^2 = (V - E) gamma'^2; the principal root has
  // Re r >= 0, the decaying direction at either outer end.
  const cplx x_end = s * ray.direction;
  const cplx r = std::sqrt((potential_value(ray.N, x_end) - energy) * ray.rhs_factor);
  cplx u(1.0, 0.0);
  cplx v = (side > 0 ? -r : r) * u;  // v = du/ds

  for (std::size_t i = 0; i < steps; ++i) {
    const cplx k1u = v;
    const cplx k1v = ray.second_derivative(s, u, energy);
    const cplx k2u = v + 0.5 * h * k1v;
    const cplx k2v = ray.second_derivative(s + 0.5 * h, u + 0.5 * h * k1u, energy);
    const cplx k3u = v + 0.5 * h * k2v;
    const cplx k3v = ray.second_derivative(s + 0.5 * h, u + 0.5 * h * k2u, energy);
    const cplx k4u = v + h * k3v;
    const cplx k4v = ray.second_derivative(s + h, u + h * k3u, energy);
    u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    s += h;
    const double mag = std::abs(u);
    if (mag > 1e100) {  // renormalize-and-continue; the Wronskian ratio is scale-free
      u /= mag;
      v /= mag;
    }
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag()) || !std::isfinite(v.real()) ||
        !std::isfinite(v.imag()))
      throw IntegrationFailureError("shooting: non-finite amplitude during integration");
  }
  return {u, v / ray.direction};
}

std::size_t auto_steps(double length, cplx energy, const HamiltonianSpec& spec) {
  // Keep h * (local WKB rate) small at the stiff outer end.
  const double vmax = std::abs(potential_value(spec.exponent, length)) + std::abs(energy);
  const double rate = std::sqrt(vmax);
  const auto steps = static_cast<std::size_t>(std::ceil(length * rate / 0.02));
  return std::clamp<std::size_t>(steps, 2000, 60000);
}

}  // namespace

cplx shoot_residual(cplx energy, const HamiltonianSpec& spec, const ShootingOptions& opts) {
  if (!std::isfinite(energy.real()) || !std::isfinite(energy.imag()))
    throw std::invalid_argument("shooting: energy must be finite");
  const double length = spec.domain->extent;
  const std::size_t steps =
      opts.steps_per_ray > 0 ? opts.steps_per_ray : auto_steps(length, energy, spec);

  const RayEnd right = integrate_ray(+1, length, steps, energy, spec);
  const RayEnd left = integrate_ray(-1, length, steps, energy, spec);
  // Scale-free mismatch: the phase-space angle between the two solutions.
  // Normalizing by |psi_L psi_R| alone is singular at odd eigenstates, whose
  // value vanishes at the junction while the slopes stay finite.
  const double scale = std::hypot(std::abs(left.value), std::abs(left.slope_x)) *
                       std::hypot(std::abs(right.value), std::abs(right.slope_x));
  if (scale == 0.0) throw IntegrationFailureError("shooting: vanishing amplitude at the junction");
  return (left.value * right.slope_x - right.value * left.slope_x) / scale;
}

cplx find_eigenvalue(cplx guess, const HamiltonianSpec& spec, cspan known,
                     const ShootingOptions& opts) {
  cplx e0 = guess;
  cplx e1 = guess + (std::abs(guess) > 1e-8 ? 1e-5 * guess : cplx(1e-5, 0.0));
  cplx w0 = shoot_residual(e0, spec, opts);
  cplx w1 = shoot_residual(e1, spec, opts);

  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    if (std::abs(w1) < opts.wronskian_tol) {
      for (const cplx& seen : known)
        if (std::abs(e1 - seen) < std::max(opts.separation_tol, 1e-9 * std::abs(seen)))
          throw ConvergedToDuplicateError("shooting: converged to an already-found eigenvalue",
                                          e1);
      return e1;
    }
    const cplx denom = w1 - w0;
    if (std::abs(denom) == 0.0)
      throw NoConvergenceError("shooting: secant stalled (flat Wronskian)");
    const cplx e2 = e1 - w1 * (e1 - e0) / denom;
    e0 = e1;
    w0 = w1;
    e1 = e2;
    w1 = shoot_residual(e1, spec, opts);
  }
  throw NoConvergenceError("shooting: no convergence after max iterations");
}

}  // namespace ptqm::solver
