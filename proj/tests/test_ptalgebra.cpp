#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "ptqm/kernels.hpp"
#include "ptqm/pt_algebra.hpp"
#include "test_support.hpp"

using namespace ptqm;
using namespace ptqm::ptalg;

namespace {

cvec envelope_noise(const model::SpatialDomain& d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  cvec f(d.count);
  for (std::size_t k = 0; k < d.count; ++k)
    f[k] = std::exp(-std::norm(d.points[k]) / 4.0) * cplx(dist(rng), dist(rng));
  return f;
}

}  // namespace

TEST_CASE("pt inner product on analytic functions") {
  const auto d = model::make_real_domain(10.0, 500);
  cvec g(d.count);
  for (std::size_t k = 0; k < d.count; ++k)
    g[k] = std::exp(-d.points[k] * d.points[k] / 2.0) / std::pow(std::numbers::pi, 0.25);
  CHECK(std::abs(pt_inner(g, g, d) - 1.0) < 1e-10);
  CHECK_THROWS_AS(pt_inner(g, cvec(3), d), std::invalid_argument);

  // antilinear in the first slot, linear in the second
  const cplx alpha(0.6, -1.1);
  cvec af(d.count), ag(d.count);
  for (std::size_t k = 0; k < d.count; ++k) {
    af[k] = alpha * g[k];
    ag[k] = alpha * g[k];
  }
  CHECK(std::abs(pt_inner(af, g, d) - std::conj(alpha) * pt_inner(g, g, d)) < 1e-12);
  CHECK(std::abs(pt_inner(g, ag, d) - alpha * pt_inner(g, g, d)) < 1e-12);
}

TEST_CASE("pt norms of the oscillator ladder alternate") {
  const auto& sol = ptest::solution(2.0, 800, 12);
  const auto& d = *sol.domain;
  CHECK(std::abs(pt_inner(sol.states[0], sol.states[1], d)) < 1e-10);
  CHECK(std::abs(pt_inner(sol.states[1], sol.states[1], d) + 1.0) < 1e-8);
  for (std::size_t n = 0; n < 8; ++n) {
    const double expect = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(std::abs(pt_inner(sol.states[n], sol.states[n], d) - expect) < 1e-8);
  }
}

TEST_CASE("normalization strips an arbitrary global phase from the ground state") {
  const auto d = model::make_real_domain(10.0, 400);
  cvec g(d.count);
  const cplx phase = std::exp(cplx(0.0, 0.7));
  for (std::size_t k = 0; k < d.count; ++k)
    g[k] = phase * 3.7 * std::exp(-d.points[k] * d.points[k] / 2.0);
  const NormalizeResult r = normalize_eigenstate(g, d);
  CHECK(r.sign == 1);
  CHECK(r.pt_residual < 1e-12);
  for (std::size_t k = 0; k < d.count; ++k) {
    CHECK(std::abs(r.state[k].imag()) < 1e-12);   // real
    CHECK(r.state[k].real() > -1e-12);            // positive
  }
  CHECK(std::abs(pt_inner(r.state, r.state, d) - 1.0) < 1e-10);
}

TEST_CASE("normalization rejects states with no PT-symmetric phase") {
  const auto d = model::make_real_domain(10.0, 400);
  cvec offset(d.count);
  for (std::size_t k = 0; k < d.count; ++k) {
    const cplx u = d.points[k] - 1.0;
    offset[k] = std::exp(-u * u);
  }
  CHECK_THROWS_AS(normalize_eigenstate(offset, d), PtAsymmetricStateError);
}

TEST_CASE("cubic eigenstates carry the alternating signs") {
  const auto& sol = ptest::solution(3.0, 800, 8);
  for (std::size_t n = 0; n < 6; ++n) CHECK(sol.pt_signs[n] == (n % 2 == 0 ? 1 : -1));
  CHECK(sol.sign_mismatches.empty());
}

TEST_CASE("c kernel acts as (-1)^n and squares to the identity on the span") {
  for (double N : {2.0, 3.0}) {
    const auto& sol = ptest::solution(N, 800, 12);
    const auto& d = *sol.domain;
    const OperatorKernel C = c_kernel(sol, 10);
    for (std::size_t n = 0; n < 10; ++n) {
      const cvec cpsi = apply_c(C, sol.states[n]);
      const cvec ccpsi = apply_c(C, cpsi);
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      cvec d1(d.count), d2(d.count);
      for (std::size_t k = 0; k < d.count; ++k) {
        d1[k] = cpsi[k] - sign * sol.states[n][k];
        d2[k] = ccpsi[k] - sol.states[n][k];
      }
      CHECK(model::weighted_norm(d, d1) < 1e-6);
      CHECK(model::weighted_norm(d, d2) < 1e-6);
    }
  }
}

TEST_CASE("c kernel reduces to parity on the oscillator span") {
  const auto& sol = ptest::solution(2.0, 800, 12);
  const auto& d = *sol.domain;
  const OperatorKernel C = c_kernel(sol, 10);
  for (std::size_t n = 0; n < 4; ++n) {
    const cvec cpsi = apply_c(C, sol.states[n]);
    const cvec ppsi = model::apply_parity(d, sol.states[n]);
    cvec diff(d.count);
    for (std::size_t k = 0; k < d.count; ++k) diff[k] = cpsi[k] - ppsi[k];
    CHECK(model::weighted_norm(d, diff) < 1e-8);
  }
}

TEST_CASE("factored application matches the dense kernel") {
  const auto& sol = ptest::solution(3.0, 800, 10);
  const auto& d = *sol.domain;
  const OperatorKernel C = c_kernel(sol, 10);
  const cvec f = envelope_noise(d, 42);
  const cvec dense = apply_c(C, f);
  const cvec fact = apply_c_factored(sol, f, 10);
  double scale = model::weighted_norm(d, dense) + 1.0;
  cvec diff(d.count);
  for (std::size_t k = 0; k < d.count; ++k) diff[k] = dense[k] - fact[k];
  CHECK(model::weighted_norm(d, diff) / scale < 1e-12);
}

TEST_CASE("c kernel refuses unnormalized input") {
  solver::EigenSolution broken = ptest::solution(2.0, 800, 6);
  for (cplx& z : broken.states[2]) z *= 1.5;
  CHECK_THROWS_AS(c_kernel(broken, 6), UnnormalizedInputError);
}

TEST_CASE("cpt norms are positive and orthonormal on the span") {
  for (double N : {2.0, 3.0}) {
    const auto& sol = ptest::solution(N, 800, 12);
    const auto& d = *sol.domain;
    const OperatorKernel C = c_kernel(sol, 10);
    for (std::size_t n = 0; n < 10; ++n)
      CHECK(std::abs(cpt_inner(sol.states[n], sol.states[n], d, C) - 1.0) < 1e-8);
    CHECK(std::abs(cpt_inner(sol.states[0], sol.states[1], d, C)) < 1e-8);

    // equal-weight six-mode combination has unit norm
    cvec f(d.count, cplx{});
    for (std::size_t n = 0; n < 6; ++n)
      kernels::active().axpy(cplx(1.0 / std::sqrt(6.0), 0.0), sol.states[n], f);
    CHECK(std::abs(cpt_inner(f, f, d, C) - 1.0) < 1e-6);

    // strict positivity on seeded random span states
    std::mt19937_64 rng(777);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      cvec g(d.count, cplx{});
      for (std::size_t n = 0; n < 10; ++n)
        kernels::active().axpy(cplx(dist(rng), dist(rng)), sol.states[n], g);
      CHECK(cpt_inner(g, g, d, C).real() > 0.0);
    }
  }
}

TEST_CASE("completeness: single-mode probe is reconstructed by one term") {
  const auto& sol = ptest::solution(2.0, 800, 8);
  const auto& d = *sol.domain;
  cvec probe(d.count);
  for (std::size_t k = 0; k < d.count; ++k)
    probe[k] = std::exp(-d.points[k] * d.points[k] / 2.0);
  const VerificationReport r = completeness_residual(sol, probe, 1);
  CHECK(r.residual < 1e-8);
  CHECK(r.passed);
}

TEST_CASE("completeness residual tracks the analytic expansion tail") {
  const auto& sol = ptest::solution(2.0, 800, 24);
  const auto& d = *sol.domain;
  cvec probe(d.count);
  for (std::size_t k = 0; k < d.count; ++k) {
    const cplx u = d.points[k] - 0.5;
    probe[k] = std::exp(-u * u);
  }
  // oracle: overlap coefficients of the textbook Hermite basis, fine grid
  const auto fine = model::make_real_domain(12.0, 4000);
  const auto basis = ptest::hermite_basis(fine, 24);
  cvec fine_probe(fine.count);
  for (std::size_t k = 0; k < fine.count; ++k) {
    const cplx u = fine.points[k] - 0.5;
    fine_probe[k] = std::exp(-u * u);
  }
  double norm2 = 0.0;
  for (std::size_t k = 0; k < fine.count; ++k)
    norm2 += fine.weights[k].real() * std::norm(fine_probe[k]);
  std::vector<double> tail(25, norm2);
  for (std::size_t n = 0; n < 24; ++n) {
    double b = 0.0;
    for (std::size_t k = 0; k < fine.count; ++k)
      b += fine.weights[k].real() * basis[n][k].real() * fine_probe[k].real();
    tail[n + 1] = tail[n] - b * b;
  }

  double prev = 1e300;
  for (std::size_t m : {std::size_t{5}, std::size_t{10}, std::size_t{20}}) {
    const VerificationReport r = completeness_residual(sol, probe, m);
    const double oracle = std::sqrt(std::max(0.0, tail[m]) / norm2);
    CHECK(r.residual < prev);  // strictly decreasing
    CHECK(r.residual == doctest::Approx(oracle).epsilon(0.02));
    prev = r.residual;
  }
}

TEST_CASE("completeness on the cubic basis in both forms") {
  const auto& sol = ptest::solution(3.0, 800, 24);
  const auto& d = *sol.domain;
  cvec probe(d.count);
  for (std::size_t k = 0; k < d.count; ++k)
    probe[k] = std::exp(-d.points[k] * d.points[k]);
  const VerificationReport alt =
      completeness_residual(sol, probe, 20, CompletenessForm::AlternatingSum);
  const VerificationReport cpt =
      completeness_residual(sol, probe, 20, CompletenessForm::CptKernel);
  CHECK(alt.residual < 1e-3);
  CHECK(cpt.residual < 1e-3);
  CHECK(std::abs(alt.residual - cpt.residual) < 1e-6);  // identical up to round-off here

  // two-resolution self-consistency of the weak residual
  const auto& coarse = ptest::solution(3.0, 600, 24);
  cvec probe2(coarse.domain->count);
  for (std::size_t k = 0; k < coarse.domain->count; ++k)
    probe2[k] = std::exp(-coarse.domain->points[k] * coarse.domain->points[k]);
  const VerificationReport alt2 = completeness_residual(coarse, probe2, 20);
  CHECK(std::abs(alt2.residual - alt.residual) < 0.25 * alt.residual + 1e-9);
}

TEST_CASE("pseudo-hermiticity with parity succeeds, with identity fails for cubic") {
  const auto& sol3 = ptest::solution(3.0, 800, 6);
  const solver::HamiltonianSpec spec3 = solver::make_hamiltonian_spec(3.0, sol3.domain, 6);
  const OperatorKernel H3 = solver::hamiltonian_matrix(spec3);
  CHECK(pseudo_hermiticity_residual(H3, parity_kernel(sol3.domain)).residual < 1e-10);
  CHECK(pseudo_hermiticity_residual(H3, identity_kernel(sol3.domain)).residual > 0.1);

  const auto& sol2 = ptest::solution(2.0, 800, 6);
  const solver::HamiltonianSpec spec2 = solver::make_hamiltonian_spec(2.0, sol2.domain, 6);
  const OperatorKernel H2 = solver::hamiltonian_matrix(spec2);
  CHECK(pseudo_hermiticity_residual(H2, identity_kernel(sol2.domain)).residual < 1e-10);

  OperatorKernel singular = zero_kernel(KernelLabel::Custom, sol2.domain);
  CHECK_THROWS_AS(pseudo_hermiticity_residual(H2, singular), SingularEtaError);
}

TEST_CASE("general eta goes through the dense inverse path") {
  // a diagonal similarity should leave a diagonal H exactly pseudo-Hermitian
  const auto dom = ptest::shared_domain(2.0, 1.0, 16, false);
  OperatorKernel H = zero_kernel(KernelLabel::H, dom);
  OperatorKernel eta = zero_kernel(KernelLabel::Custom, dom);
  for (std::size_t i = 0; i < H.dim; ++i) {
    H.at(i, i) = cplx(static_cast<double>(i), 0.0);
    eta.at(i, i) = cplx(1.0 + 0.1 * static_cast<double>(i), 0.0);
  }
  CHECK(pseudo_hermiticity_residual(H, eta).residual < 1e-12);
}

TEST_CASE("H is symmetric under the PT product on random functions") {
  const auto& sol = ptest::solution(3.0, 800, 6);
  const auto& d = *sol.domain;
  const solver::HamiltonianSpec spec = solver::make_hamiltonian_spec(3.0, sol.domain, 6);
  const OperatorKernel H = solver::hamiltonian_matrix(spec);
  const cvec f = envelope_noise(d, 7);
  const cvec g = envelope_noise(d, 8);
  const cplx lhs = pt_inner(f, H.apply(g), d);
  const cplx rhs = pt_inner(H.apply(f), g, d);
  CHECK(std::abs(lhs - rhs) / (std::abs(lhs) + 1.0) < 1e-10);
}
