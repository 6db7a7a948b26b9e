#include "ptqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ptqm/dynamics.hpp"
#include "ptqm/eigensolve.hpp"
#include "ptqm/hamiltonian.hpp"
#include "ptqm/kernels.hpp"

namespace ptqm::verify {
namespace {

using ptalg::VerificationReport;

// Pinned tolerances of the residual suite.
constexpr double kTolQuadrature = 1e-8;
constexpr double kTolHPtSymmetry = 1e-12;
constexpr double kTolHProductSymmetry = 1e-10;
constexpr double kTolSpectrumReality = 1e-6;
constexpr double kTolPtNormDiag = 1e-6;
constexpr double kTolPtNormOffdiag = 1e-8;
constexpr double kTolCEigenAction = 1e-6;
constexpr double kTolCSquared = 1e-6;
constexpr double kTolCptNormDiag = 1e-6;
constexpr double kTolCptOffdiag = 1e-8;
constexpr double kTolCompleteness = 1e-3;
constexpr double kTolPseudoHermiticity = 1e-10;
constexpr double kMinIdentityControlGap = 0.1;
constexpr double kTolNormConservation = 1e-8;
constexpr double kMinBrokenDrift = 0.3;
constexpr double kTolProbabilityIntegral = 1e-6;
constexpr double kTolContinuity = 1e-5;
constexpr double kTolStationaryCurrent = 1e-5;
constexpr double kTolCommutator = 1e-6;
constexpr double kTolEhrenfest = 1e-4;

cvec random_coefficients(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  cvec c(n);
  double norm2 = 0.0;
  for (cplx& z : c) {
    z = cplx(dist(rng), dist(rng));
    norm2 += std::norm(z);
  }
  for (cplx& z : c) z /= std::sqrt(norm2);
  return c;
}

nlohmann::json base_context(const cli::RunConfig& cfg, std::size_t M) {
  return {{"N", cfg.N}, {"L", cfg.resolved_L()}, {"M_grid", cfg.grid}, {"M", M}};
}

}  // namespace

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.passed; });
}

std::vector<VerificationReport> run_suite(const cli::RunConfig& cfg) {
  std::vector<VerificationReport> out;
  const auto& k = kernels::active();

  const auto domain = std::make_shared<const model::SpatialDomain>(
      cfg.use_wedge() ? model::make_wedge_domain(cfg.N, cfg.resolved_L(), cfg.grid)
                      : model::make_real_domain(cfg.resolved_L(), cfg.grid));
  const solver::HamiltonianSpec spec =
      solver::make_hamiltonian_spec(cfg.N, domain, cfg.stencil_order);
  const OperatorKernel H = solver::hamiltonian_matrix(spec);

  const std::size_t M = std::min(std::max<std::size_t>(cfg.modes, 20), cfg.grid / 4);
  auto ctx = [&](std::size_t m) { return base_context(cfg, m); };

  // Quadrature sanity: a unit Gaussian integrates to sqrt(pi) on the contour.
  {
    cvec g(domain->count);
    for (std::size_t i = 0; i < domain->count; ++i)
      g[i] = std::exp(-domain->points[i] * domain->points[i]);
    const cplx integral = model::integrate(*domain, g);
    out.push_back(VerificationReport::make(
        "quadrature_gaussian", std::abs(integral - std::sqrt(std::numbers::pi)), kTolQuadrature,
        ctx(M)));
  }

  // Discrete PT symmetry of H: conj(P H P) = H.
  {
    double diff2 = 0.0;
    for (std::size_t i = 0; i < H.dim; ++i)
      for (std::size_t j = 0; j < H.dim; ++j) {
        const cplx mirrored =
            std::conj(H.at(domain->parity_index[i], domain->parity_index[j]));
        diff2 += std::norm(mirrored - H.at(i, j));
      }
    out.push_back(VerificationReport::make("h_pt_symmetry",
                                           std::sqrt(diff2) / H.frobenius_norm(),
                                           kTolHPtSymmetry, ctx(M)));
  }

  // <f|Hg>_PT = <Hf|g>_PT on random sampled functions.
  {
    std::mt19937_64 rng(cfg.seed + 1);
    std::normal_distribution<double> dist(0.0, 1.0);
    cvec f(domain->count), g(domain->count);
    for (std::size_t i = 0; i < domain->count; ++i) {
      const double envelope = std::exp(-std::norm(domain->points[i]) / 4.0);
      f[i] = envelope * cplx(dist(rng), dist(rng));
      g[i] = envelope * cplx(dist(rng), dist(rng));
    }
    const cplx lhs = ptalg::pt_inner(f, H.apply(g), *domain);
    const cplx rhs = ptalg::pt_inner(H.apply(f), g, *domain);
    const double scale = std::abs(lhs) + std::abs(rhs) + 1.0;
    out.push_back(VerificationReport::make("pt_product_h_symmetry", std::abs(lhs - rhs) / scale,
                                           kTolHProductSymmetry, ctx(M)));
  }

  // Everything below needs the eigenbasis; solver diagnostics become reports.
  solver::EigenSolution sol;
  bool solved = false;
  try {
    solver::SolverOptions opts;
    opts.phase_tol = cfg.phase_tol;
    opts.residual_tol = cfg.solver_tol;
    opts.separation_tol = cfg.separation_tol;
    sol = solver::eigensolve(spec, M, opts);
    solved = true;
  } catch (const BrokenPhaseError& e) {
    out.push_back(VerificationReport::make("solver_unbroken_phase", 1.0, 0.0,
                                           {{"error", e.what()}}));
  } catch (const Error& e) {
    out.push_back(VerificationReport::make("solver", 1.0, 0.0, {{"error", e.what()}}));
  }
  if (!solved) {
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
  }

  const model::SpatialDomain& d = *domain;

  // Spectrum reality and positivity over the retained modes.
  {
    double max_ratio = 0.0, min_re = 1e300;
    for (const cplx& e : sol.energies) {
      max_ratio = std::max(max_ratio, std::abs(e.imag()) / std::max(1.0, std::abs(e.real())));
      min_re = std::min(min_re, e.real());
    }
    out.push_back(VerificationReport::make("spectrum_reality", max_ratio, kTolSpectrumReality,
                                           ctx(M)));
    out.push_back(VerificationReport::make("spectrum_positivity", std::max(0.0, -min_re), 0.0,
                                           {{"min_re_energy", min_re}}));
  }

  // PT norms: diagonal (-1)^n, off-diagonal zero.
  {
    double diag = 0.0, offdiag = 0.0;
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t n = 0; n < M; ++n) {
        const cplx v = ptalg::pt_inner(sol.states[m], sol.states[n], d);
        if (m == n) {
          const double expected = (n % 2 == 0) ? 1.0 : -1.0;
          diag = std::max(diag, std::abs(v - expected));
        } else {
          offdiag = std::max(offdiag, std::abs(v));
        }
      }
    out.push_back(VerificationReport::make("pt_norm_diag", diag, kTolPtNormDiag, ctx(M)));
    out.push_back(VerificationReport::make("pt_norm_offdiag", offdiag, kTolPtNormOffdiag, ctx(M)));
    out.push_back(VerificationReport::make(
        "sign_alternation", static_cast<double>(sol.sign_mismatches.size()), 0.0, ctx(M)));
  }

  // C-operator algebra on the truncated span.
  const std::size_t Mc = std::min<std::size_t>(10, M);
  const OperatorKernel C = ptalg::c_kernel(sol, Mc);
  {
    double action = 0.0, squared = 0.0;
    for (std::size_t n = 0; n < Mc; ++n) {
      const cvec cpsi = ptalg::apply_c(C, sol.states[n]);
      const cvec ccpsi = ptalg::apply_c(C, cpsi);
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      cvec diff(d.count), diff2v(d.count);
      for (std::size_t i = 0; i < d.count; ++i) {
        diff[i] = cpsi[i] - sign * sol.states[n][i];
        diff2v[i] = ccpsi[i] - sol.states[n][i];
      }
      action = std::max(action, model::weighted_norm(d, diff));
      squared = std::max(squared, model::weighted_norm(d, diff2v));
    }
    out.push_back(VerificationReport::make("c_eigen_action", action, kTolCEigenAction, ctx(Mc)));
    out.push_back(VerificationReport::make("c_squared", squared, kTolCSquared, ctx(Mc)));
  }

  // CPT norms: unit diagonal, vanishing off-diagonal, positivity on random states.
  {
    double diag = 0.0, offdiag = 0.0;
    for (std::size_t m = 0; m < Mc; ++m)
      for (std::size_t n = 0; n < Mc; ++n) {
        const cplx v = ptalg::cpt_inner(sol.states[m], sol.states[n], d, C);
        if (m == n)
          diag = std::max(diag, std::abs(v - 1.0));
        else
          offdiag = std::max(offdiag, std::abs(v));
      }
    out.push_back(VerificationReport::make("cpt_norm_diag", diag, kTolCptNormDiag, ctx(Mc)));
    out.push_back(
        VerificationReport::make("cpt_orthogonality", offdiag, kTolCptOffdiag, ctx(Mc)));

    double min_norm = 1e300;
    for (int trial = 0; trial < 100; ++trial) {
      const cvec c = random_coefficients(Mc, cfg.seed + 100 + trial);
      cvec f(d.count, cplx{});
      for (std::size_t n = 0; n < Mc; ++n) k.axpy(c[n], sol.states[n], f);
      min_norm = std::min(min_norm, ptalg::cpt_inner(f, f, d, C).real());
    }
    nlohmann::json c2 = ctx(Mc);
    c2["min_norm"] = min_norm;
    out.push_back(VerificationReport::make("cpt_positivity_random", std::max(0.0, -min_norm),
                                           0.0, c2));
  }

  // Completeness against a Gaussian probe, both forms, decreasing in M.
  {
    cvec probe(d.count);
    for (std::size_t i = 0; i < d.count; ++i)
      probe[i] = std::exp(-d.points[i] * d.points[i]);
    std::vector<std::size_t> ms;
    for (std::size_t m : {std::size_t{5}, std::size_t{10}, std::size_t{20}})
      if (m <= M && (ms.empty() || m != ms.back())) ms.push_back(m);
    double prev = 1e300;
    double worst_gap = 0.0;
    nlohmann::json series = nlohmann::json::array();
    VerificationReport final_alt, final_cpt;
    for (std::size_t m : ms) {
      final_alt = ptalg::completeness_residual(sol, probe, m,
                                               ptalg::CompletenessForm::AlternatingSum,
                                               kTolCompleteness);
      series.push_back({{"M", m}, {"residual", final_alt.residual}});
      if (final_alt.residual >= prev) worst_gap = std::max(worst_gap, final_alt.residual - prev);
      prev = final_alt.residual;
    }
    final_cpt = ptalg::completeness_residual(sol, probe, ms.back(),
                                             ptalg::CompletenessForm::CptKernel, kTolCompleteness);
    final_alt.context["series"] = series;
    out.push_back(final_alt);
    out.push_back(final_cpt);
    out.push_back(VerificationReport::make("completeness_monotonic", worst_gap, 0.0,
                                           {{"series", series}}));
  }

  // Pseudo-Hermiticity: eta = P passes, eta = I is the negative control
  // whenever the potential is genuinely non-Hermitian.
  {
    VerificationReport p = ptalg::pseudo_hermiticity_residual(H, parity_kernel(domain),
                                                              kTolPseudoHermiticity);
    p.name = "pseudo_hermiticity_parity";
    p.context = ctx(M);
    out.push_back(p);

    double max_im_v = 0.0;
    for (const cplx& v : spec.potential) max_im_v = std::max(max_im_v, std::abs(v.imag()));
    if (max_im_v > 1e-12) {
      const VerificationReport raw =
          ptalg::pseudo_hermiticity_residual(H, identity_kernel(domain), kTolPseudoHermiticity);
      nlohmann::json c2 = ctx(M);
      c2["raw_residual"] = raw.residual;
      out.push_back(VerificationReport::make("pseudo_hermiticity_identity_control",
                                             std::max(0.0, kMinIdentityControlGap - raw.residual),
                                             0.0, c2));
    }
  }

  // CPT-unitary evolution: drift of a random 6-mode state, plus the synthetic
  // broken pair whose norm must blow up.
  {
    const std::size_t nmodes = std::min<std::size_t>(6, M);
    const cvec c = random_coefficients(nmodes, cfg.seed);
    std::vector<double> times;
    for (double t = 0.0; t <= 5.0 + 1e-12; t += 0.01) times.push_back(t);
    VerificationReport r = dynamics::unitarity_trace(c, sol, times, kTolNormConservation);
    r.context.update(ctx(nmodes));
    out.push_back(r);

    solver::EigenSolution broken = sol;
    broken.energies[0] = cplx(1.0, 0.1);
    broken.energies[1] = cplx(1.0, -0.1);
    cvec pair = {cplx(1.0 / std::sqrt(2.0), 0.0), cplx(1.0 / std::sqrt(2.0), 0.0)};
    const dynamics::WaveState s5 = dynamics::evolve(pair, broken, 0.0, 5.0);
    const cvec cpt = ptalg::apply_c_factored(broken, model::apply_pt(d, s5.amplitudes));
    const double drift = std::abs(k.dot3(d.weights, cpt, s5.amplitudes) - 1.0);
    nlohmann::json c2 = ctx(2);
    c2["drift_at_t5"] = drift;
    out.push_back(VerificationReport::make("broken_pair_drift_control",
                                           std::max(0.0, kMinBrokenDrift - drift), 0.0, c2));
  }

  // Probability integral and pointwise continuity on a two-mode state.
  {
    const cvec two = {cplx(1.0 / std::sqrt(2.0), 0.0), cplx(1.0 / std::sqrt(2.0), 0.0)};
    const dynamics::EvolutionTrace trace =
        dynamics::make_trace(two, sol, 0.0, 1.0, cfg.evolve.dt, /*store_states=*/true);
    double worst = 0.0;
    for (const cplx& n : trace.norms) worst = std::max(worst, std::abs(n - 1.0));
    out.push_back(VerificationReport::make("probability_integral", worst,
                                           kTolProbabilityIntegral, ctx(2)));
    const BandedOperator d1 = solver::derivative_operator(d, 1, cfg.stencil_order);
    VerificationReport cont = dynamics::continuity_residual(trace, sol, d1, kTolContinuity);
    cont.context.update(ctx(2));
    out.push_back(cont);

    // Stationary states carry no CPT current.
    double jmax = 0.0;
    for (std::size_t n = 0; n < std::min<std::size_t>(4, M); ++n) {
      const cvec j = dynamics::probability_current(sol.states[n], sol, d1);
      const cvec dj = d1.apply(j);
      for (const cplx& z : dj) jmax = std::max(jmax, std::abs(z));
    }
    out.push_back(VerificationReport::make("stationary_current", jmax, kTolStationaryCurrent,
                                           ctx(std::min<std::size_t>(4, M))));
  }

  // [H, x] = -2 D, evaluated weakly on the first modes.
  {
    const std::size_t mi = std::min<std::size_t>(6, M);
    VerificationReport r = dynamics::commutator_hx_residual(
        H, dynamics::position_kernel(domain), dynamics::momentum_kernel(domain, cfg.stencil_order),
        sol, mi, kTolCommutator);
    r.context.update(ctx(mi));
    out.push_back(r);
  }

  // Ehrenfest pair on a two-mode state.
  {
    const cvec two = {cplx(1.0 / std::sqrt(2.0), 0.0), cplx(1.0 / std::sqrt(2.0), 0.0)};
    const dynamics::EvolutionTrace trace =
        dynamics::make_trace(two, sol, 0.0, 2.0, cfg.evolve.dt, false);
    dynamics::EhrenfestReports er = dynamics::ehrenfest_report(trace, kTolEhrenfest);
    er.x.context.update(ctx(2));
    er.p.context.update(ctx(2));
    out.push_back(er.x);
    out.push_back(er.p);
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

}  // namespace ptqm::verify
