#include "ptqm/dynamics.hpp"

#include <cmath>

#include "ptqm/hamiltonian.hpp"
#include "ptqm/kernels.hpp"

namespace ptqm::dynamics {
namespace {

cvec reconstruct(const solver::EigenSolution& sol, cspan coeffs) {
  const auto& k = kernels::active();
  cvec out(sol.domain->count, cplx{});
  for (std::size_t n = 0; n < coeffs.size(); ++n) k.axpy(coeffs[n], sol.states[n], out);
  return out;
}

cvec rotated_coefficients(cspan coeffs, const solver::EigenSolution& sol, double dt_total) {
  cvec c(coeffs.begin(), coeffs.end());
  for (std::size_t n = 0; n < c.size(); ++n)
    c[n] *= std::exp(cplx(0.0, -1.0) * sol.energies[n] * dt_total);
  return c;
}

void check_uniform_times(std::span<const double> times, std::size_t minimum) {
  if (times.size() < minimum)
    throw InsufficientSamplesError("trace: need at least " + std::to_string(minimum) +
                                   " instants");
  const double dt = times[1] - times[0];
  for (std::size_t i = 1; i + 1 < times.size(); ++i)
    if (std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw InsufficientSamplesError("trace: instants are not uniformly spaced");
}

}  // namespace

ExpandResult expand_state(cspan psi0, const solver::EigenSolution& sol, double bound,
                          bool enforce) {
  const model::SpatialDomain& d = *sol.domain;
  if (psi0.size() != d.count) throw std::invalid_argument("expand_state: sample count mismatch");
  ExpandResult r;
  r.coefficients.resize(sol.modes);
  for (std::size_t n = 0; n < sol.modes; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    r.coefficients[n] = sign * ptalg::pt_inner(sol.states[n], psi0, d);
  }
  const cvec recon = reconstruct(sol, r.coefficients);
  cvec diff(d.count);
  for (std::size_t i = 0; i < d.count; ++i) diff[i] = recon[i] - psi0[i];
  r.truncation_residual = model::weighted_norm(d, diff) / model::weighted_norm(d, psi0);
  if (enforce && r.truncation_residual > bound)
    throw PoorRepresentationError("expand_state: initial state poorly represented below mode M",
                                  r.truncation_residual);
  return r;
}

WaveState evolve(cspan coefficients, const solver::EigenSolution& sol, double t0, double t) {
  if (coefficients.size() > sol.modes)
    throw std::invalid_argument("evolve: more coefficients than retained modes");
  WaveState s;
  s.time = t;
  s.coefficients = rotated_coefficients(coefficients, sol, t - t0);
  s.amplitudes = reconstruct(sol, s.coefficients);
  cplx norm{};
  for (const cplx& c : s.coefficients) norm += std::conj(c) * c;
  s.norm_cpt = norm;
  return s;
}

ptalg::VerificationReport unitarity_trace(cspan coefficients, const solver::EigenSolution& sol,
                                          std::span<const double> times, double tolerance) {
  if (times.size() < 2) throw InsufficientSamplesError("unitarity_trace: need >= 2 instants");
  const model::SpatialDomain& d = *sol.domain;
  const auto& k = kernels::active();
  cplx norm0{};
  double drift = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const WaveState s = evolve(coefficients, sol, times[0], times[i]);
    const cvec cpt = ptalg::apply_c_factored(sol, model::apply_pt(d, s.amplitudes));
    const cplx norm = k.dot3(d.weights, cpt, s.amplitudes);
    if (i == 0)
      norm0 = norm;
    else
      drift = std::max(drift, std::abs(norm - norm0));
  }
  return ptalg::VerificationReport::make("cpt_norm_conservation", drift, tolerance,
                                         {{"instants", times.size()},
                                          {"t0", times.front()},
                                          {"t1", times.back()}});
}

DensityResult probability_density(const WaveState& state, const solver::EigenSolution& sol,
                                  double tolerance, bool enforce) {
  const model::SpatialDomain& d = *sol.domain;
  if (state.amplitudes.size() != d.count)
    throw std::invalid_argument("probability_density: sample count mismatch");
  const auto& k = kernels::active();
  const cvec cpt = ptalg::apply_c_factored(sol, model::apply_pt(d, state.amplitudes));
  DensityResult r;
  r.density.resize(d.count);
  k.hadamard(cpt, state.amplitudes, r.density);
  r.integral = k.dot(d.weights, r.density);
  r.max_imag = 0.0;
  for (const cplx& p : r.density) r.max_imag = std::max(r.max_imag, std::abs(p.imag()));
  const double off = std::abs(r.integral - 1.0);
  r.report = ptalg::VerificationReport::make("probability_integral", off, tolerance,
                                             {{"max_im_density", r.max_imag}});
  if (enforce && off > tolerance)
    throw NotNormalizedError("probability_density: state is not CPT-normalized");
  return r;
}

cvec probability_current(cspan psi, cspan cpt_psi, const BandedOperator& d1) {
  const cvec dpsi = d1.apply(psi);
  const cvec dcpt = d1.apply(cpt_psi);
  cvec j(psi.size());
  const cplx minus_i(0.0, -1.0);
  for (std::size_t k = 0; k < psi.size(); ++k)
    j[k] = minus_i * (cpt_psi[k] * dpsi[k] - dcpt[k] * psi[k]);
  return j;
}

cvec probability_current(cspan psi, const solver::EigenSolution& sol, const BandedOperator& d1) {
  const cvec cpt = ptalg::apply_c_factored(sol, model::apply_pt(*sol.domain, psi));
  return probability_current(psi, cpt, d1);
}

ptalg::VerificationReport continuity_residual(const EvolutionTrace& trace,
                                              const solver::EigenSolution& sol,
                                              const BandedOperator& d1, double tolerance) {
  if (trace.states.size() != trace.times.size())
    throw InsufficientSamplesError("continuity: trace must carry stored states");
  check_uniform_times(trace.times, 3);
  const model::SpatialDomain& d = *sol.domain;
  const auto& k = kernels::active();
  const double dt = trace.times[1] - trace.times[0];

  std::vector<cvec> density(trace.times.size());
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const cvec& psi = trace.states[i].amplitudes;
    const cvec cpt = ptalg::apply_c_factored(sol, model::apply_pt(d, psi));
    density[i].resize(d.count);
    k.hadamard(cpt, psi, density[i]);
  }

  double pointwise = 0.0, integrated = 0.0;
  for (std::size_t i = 1; i + 1 < trace.times.size(); ++i) {
    const cvec& psi = trace.states[i].amplitudes;
    const cvec cpt = ptalg::apply_c_factored(sol, model::apply_pt(d, psi));
    const cvec j = probability_current(psi, cpt, d1);
    const cvec dj = d1.apply(j);
    for (std::size_t x = 0; x < d.count; ++x) {
      const cplx dpdt = (density[i + 1][x] - density[i - 1][x]) / (2.0 * dt);
      pointwise = std::max(pointwise, std::abs(dpdt + dj[x]));
    }
    const cplx dint = (k.dot(d.weights, density[i + 1]) - k.dot(d.weights, density[i - 1])) /
                      (2.0 * dt);
    integrated = std::max(integrated, std::abs(dint + k.dot(d.weights, dj)));
  }
  return ptalg::VerificationReport::make("continuity_pointwise", pointwise, tolerance,
                                         {{"integrated_form", integrated}, {"dt", dt}});
}

cplx expectation(const OperatorKernel& op, cspan psi, const OperatorKernel& C,
                 const model::SpatialDomain& d) {
  const cvec cpt = ptalg::apply_c(C, model::apply_pt(d, psi));
  const cvec opsi = op.apply(psi);
  return kernels::active().dot3(d.weights, cpt, opsi);
}

ptalg::VerificationReport commutator_hx_residual(const OperatorKernel& H, const OperatorKernel& X,
                                                 const OperatorKernel& Pmom,
                                                 const solver::EigenSolution& sol,
                                                 std::size_t M_interior, double tolerance) {
  if (M_interior > sol.modes)
    throw std::invalid_argument("commutator: M_interior exceeds retained modes");
  const model::SpatialDomain& d = *sol.domain;
  const auto& k = kernels::active();
  const cplx two_i(0.0, 2.0);

  double residual = 0.0;
  for (std::size_t n = 0; n < M_interior; ++n) {
    const cvec& psi = sol.states[n];
    const cvec hx = H.apply(X.apply(psi));
    const cvec xh = X.apply(H.apply(psi));
    const cvec pp = Pmom.apply(psi);
    cvec a(d.count);
    for (std::size_t i = 0; i < d.count; ++i) a[i] = hx[i] - xh[i] + two_i * pp[i];
    for (std::size_t m = 0; m < M_interior; ++m) {
      const cvec cpt = ptalg::apply_c_factored(sol, model::apply_pt(d, sol.states[m]));
      residual = std::max(residual, std::abs(k.dot3(d.weights, cpt, a)));
    }
  }
  return ptalg::VerificationReport::make("commutator_hx", residual, tolerance,
                                         {{"M_interior", M_interior}});
}

EhrenfestReports ehrenfest_report(const EvolutionTrace& trace, double tolerance) {
  check_uniform_times(trace.times, 5);
  const double dt = trace.times[1] - trace.times[0];
  const double inv_mass = 1.0 / PhysicalConstants::mass;
  double rx = 0.0, rp = 0.0;
  for (std::size_t i = 1; i + 1 < trace.times.size(); ++i) {
    const cplx dxdt = (trace.x_expect[i + 1] - trace.x_expect[i - 1]) / (2.0 * dt);
    const cplx dpdt = (trace.p_expect[i + 1] - trace.p_expect[i - 1]) / (2.0 * dt);
    rx = std::max(rx, std::abs(dxdt - inv_mass * trace.p_expect[i]));
    rp = std::max(rp, std::abs(dpdt + trace.dvdx_expect[i]));
  }
  EhrenfestReports r;
  r.x = ptalg::VerificationReport::make("ehrenfest_x", rx, tolerance, {{"dt", dt}});
  r.p = ptalg::VerificationReport::make("ehrenfest_p", rp, tolerance, {{"dt", dt}});
  return r;
}

EvolutionTrace make_trace(cspan coefficients, const solver::EigenSolution& sol, double t0,
                          double t1, double dt, bool store_states) {
  if (!(dt > 0.0) || !(t1 > t0)) throw std::invalid_argument("trace: need t1 > t0 and dt > 0");
  const model::SpatialDomain& d = *sol.domain;
  const auto& k = kernels::active();
  const auto steps = static_cast<std::size_t>(std::llround((t1 - t0) / dt));

  cvec dvdx_diag(d.count);
  for (std::size_t i = 0; i < d.count; ++i)
    dvdx_diag[i] = solver::potential_derivative(sol.exponent, d.points[i]);
  const BandedOperator d1 =
      solver::derivative_operator(d, 1, sol.stencil_order > 0 ? sol.stencil_order : 6);

  EvolutionTrace trace;
  trace.times.resize(steps + 1);
  trace.norms.resize(steps + 1);
  trace.x_expect.resize(steps + 1);
  trace.p_expect.resize(steps + 1);
  trace.dvdx_expect.resize(steps + 1);
  if (store_states) trace.states.resize(steps + 1);

  cvec tmp(d.count);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = t0 + dt * static_cast<double>(i);
    WaveState s = evolve(coefficients, sol, t0, t);
    const cvec cpt = ptalg::apply_c_factored(sol, model::apply_pt(d, s.amplitudes));

    trace.times[i] = t;
    trace.norms[i] = k.dot3(d.weights, cpt, s.amplitudes);
    s.norm_cpt = trace.norms[i];

    k.hadamard(d.points, s.amplitudes, tmp);  // x Psi
    trace.x_expect[i] = k.dot3(d.weights, cpt, tmp);

    const cvec dpsi = d1.apply(s.amplitudes);
    trace.p_expect[i] = cplx(0.0, -1.0) * k.dot3(d.weights, cpt, dpsi);

    k.hadamard(dvdx_diag, s.amplitudes, tmp);
    trace.dvdx_expect[i] = k.dot3(d.weights, cpt, tmp);

    if (store_states) trace.states[i] = std::move(s);
  }
  return trace;
}

cvec crank_nicolson_evolve(const BandedOperator& h, cspan psi0, double t0, double t1, double dt) {
  if (!(dt > 0.0) || !(t1 > t0)) throw std::invalid_argument("crank-nicolson: need t1 > t0, dt > 0");
  const std::size_t n = h.dim;
  if (psi0.size() != n) throw std::invalid_argument("crank-nicolson: sample count mismatch");
  const auto steps = static_cast<std::size_t>(std::llround((t1 - t0) / dt));
  const int w = h.halfwidth;
  const int stride = 2 * w + 1;
  const cplx half_step(0.0, dt / 2.0);

  // A = I + i dt/2 H, factored once without pivoting (diagonally dominant for
  // the dt this cross-check runs at). B = I - i dt/2 H applied per step.
  cvec A(h.bands.size());
  for (std::size_t r = 0; r < n; ++r)
    for (int o = -w; o <= w; ++o) {
      const cplx hv = h.bands[r * stride + o + w];
      A[r * stride + o + w] = (o == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)) + half_step * hv;
    }
  // In-place banded LU (L has unit diagonal, stored in the lower offsets).
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const cplx piv = A[i * stride + w];
    if (std::abs(piv) < 1e-300) throw Error("crank-nicolson: zero pivot in banded LU");
    for (int r = 1; r <= w && i + r < n; ++r) {
      const std::size_t row = i + r;
      cplx& l = A[row * stride + w - r];  // column i
      l /= piv;
      for (int c = 1; c <= w; ++c) {
        // column i + c of row `row` minus l * (row i, column i + c)
        if (i + c < n) A[row * stride + w - r + c] -= l * A[i * stride + w + c];
      }
    }
  }

  cvec psi(psi0.begin(), psi0.end()), rhs(n);
  for (std::size_t step = 0; step < steps; ++step) {
    // rhs = (I - i dt/2 H) psi
    for (std::size_t r = 0; r < n; ++r) {
      cplx s = psi[r];
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(-w, -static_cast<std::ptrdiff_t>(r));
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(w, static_cast<std::ptrdiff_t>(n - 1 - r));
      for (std::ptrdiff_t o = lo; o <= hi; ++o)
        s -= half_step * h.bands[r * stride + o + w] * psi[r + o];
      rhs[r] = s;
    }
    // Forward substitution (unit lower band), then back substitution.
    for (std::size_t r = 0; r < n; ++r) {
      cplx s = rhs[r];
      for (int o = 1; o <= w && o <= static_cast<int>(r); ++o)
        s -= A[r * stride + w - o] * rhs[r - o];
      rhs[r] = s;
    }
    for (std::size_t ri = n; ri-- > 0;) {
      cplx s = rhs[ri];
      for (int o = 1; o <= w && ri + o < n; ++o) s -= A[ri * stride + w + o] * rhs[ri + o];
      rhs[ri] = s / A[ri * stride + w];
    }
    psi = rhs;
  }
  return psi;
}

OperatorKernel position_kernel(model::DomainPtr domain) {
  OperatorKernel k = zero_kernel(KernelLabel::X, domain);
  for (std::size_t i = 0; i < k.dim; ++i) k.at(i, i) = domain->points[i];
  return k;
}

OperatorKernel momentum_kernel(model::DomainPtr domain, int order) {
  const BandedOperator d1 = solver::derivative_operator(*domain, 1, order);
  OperatorKernel k = d1.to_dense(KernelLabel::Pmom, domain);
  for (cplx& z : k.entries) z *= cplx(0.0, -1.0);  // p = -i d/dx
  return k;
}

OperatorKernel dvdx_kernel(double N, model::DomainPtr domain) {
  OperatorKernel k = zero_kernel(KernelLabel::Custom, domain);
  for (std::size_t i = 0; i < k.dim; ++i)
    k.at(i, i) = solver::potential_derivative(N, domain->points[i]);
  return k;
}

cvec gaussian_state(const model::SpatialDomain& d, double center, double width, double momentum) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian state: width must be positive");
  cvec psi(d.count);
  for (std::size_t k = 0; k < d.count; ++k) {
    const cplx x = d.points[k];
    const cplx u = x - center;
    psi[k] = std::exp(-u * u / (2.0 * width * width) + cplx(0.0, momentum) * x);
  }
  return psi;
}

}  // namespace ptqm::dynamics
