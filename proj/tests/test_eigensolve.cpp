#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ptqm/eigensolve.hpp"
#include "ptqm/shooting.hpp"
#include "test_support.hpp"

using namespace ptqm;
using namespace ptqm::solver;

TEST_CASE("harmonic spectrum matches 2n+1 to 1e-8 on the documented grid") {
  const EigenSolution& sol = ptest::solution(2.0, 800, 6);
  for (std::size_t n = 0; n < 6; ++n) {
    CHECK(std::abs(sol.energies[n] - cplx(2.0 * n + 1.0, 0.0)) < 1e-8);
    CHECK(sol.residuals[n] < 1e-8);
  }
}

TEST_CASE("cubic ground state matches the frozen Richardson oracle") {
  const EigenSolution& sol = ptest::solution(3.0, 800, 8);
  CHECK(std::abs(sol.energies[0].real() - ptest::kCubicEnergies[0]) < 1e-5);

  // live independent oracle: 3-point stencil + Richardson at two resolutions
  const std::vector<cplx> oracle = ptest::richardson_oracle(3.0, 12.0, 400, 4);
  for (std::size_t n = 0; n < 4; ++n)
    CHECK(std::abs(sol.energies[n] - oracle[n]) < 5e-5);
}

TEST_CASE("matrix and shooting eigenvalues agree for N in {2,3}") {
  for (double N : {2.0, 3.0}) {
    const EigenSolution& sol = ptest::solution(N, 800, 8);
    const HamiltonianSpec spec = make_hamiltonian_spec(N, sol.domain, 6);
    for (std::size_t n = 0; n < 4; ++n) {
      const cplx refined = find_eigenvalue(sol.energies[n], spec);
      CHECK(std::abs(refined - sol.energies[n]) < 1e-5);
    }
  }
}

TEST_CASE("grid doubling contracts the error at the stencil rate") {
  // order 2: one eigenvalue refinement reduces the error by ~4
  auto e0_at = [](std::size_t grid, int order) {
    const HamiltonianSpec spec =
        make_hamiltonian_spec(3.0, ptest::shared_domain(3.0, 12.0, grid, false), order);
    return eigensolve(spec, 2).energies[0].real();
  };
  const double exact = ptest::kCubicEnergies[0];
  const double c2 = std::abs(e0_at(300, 2) - exact);
  const double f2 = std::abs(e0_at(600, 2) - exact);
  CHECK(c2 / f2 > 3.5);
  CHECK(c2 / f2 < 4.5);

  const double c6 = std::abs(e0_at(300, 6) - exact);
  const double f6 = std::abs(e0_at(600, 6) - exact);
  CHECK(c6 / f6 > 4.0);  // at least the second-order rate; in practice ~64x
}

TEST_CASE("pt-norm signs alternate for the retained modes") {
  for (double N : {2.0, 3.0}) {
    const EigenSolution& sol = ptest::solution(N, 800, 10);
    CHECK(sol.sign_mismatches.empty());
    for (std::size_t n = 0; n < sol.modes; ++n)
      CHECK(sol.pt_signs[n] == (n % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("quartic on the real line is rejected with a typed diagnostic") {
  const HamiltonianSpec spec =
      make_hamiltonian_spec(4.0, ptest::shared_domain(4.0, 8.0, 400, false), 6);
  bool threw = false;
  try {
    eigensolve(spec, 6);
  } catch (const UnboundedSpectrumError&) {
    threw = true;
  } catch (const BrokenPhaseError&) {
    threw = true;
  }
  CHECK(threw);
}

TEST_CASE("quartic converges on the wedge contour") {
  const EigenSolution& sol = ptest::solution(4.0, 800, 3, 8.0, 6, /*wedge=*/true);
  for (std::size_t n = 0; n < 3; ++n)
    CHECK(std::abs(sol.energies[n] - ptest::kQuarticWedgeEnergies[n]) < 1e-3);
  CHECK(sol.sign_mismatches.empty());
  // eigenfunctions decay along both rays
  const cvec& ground = sol.states[0];
  const double peak = model::weighted_norm(*sol.domain, ground);
  CHECK(std::abs(ground.front()) < 1e-8 * peak);
  CHECK(std::abs(ground.back()) < 1e-8 * peak);
}

TEST_CASE("wedge and real-line spectra coincide at N=2") {
  const EigenSolution& real_sol = ptest::solution(2.0, 400, 4, 10.0);
  const EigenSolution& wedge_sol = ptest::solution(2.0, 400, 4, 10.0, 6, /*wedge=*/true);
  for (std::size_t n = 0; n < 4; ++n)
    CHECK(std::abs(real_sol.energies[n] - wedge_sol.energies[n]) < 1e-10);
}

TEST_CASE("degenerate spectra are reported as a typed failure") {
  const auto dom = ptest::shared_domain(2.0, 1.0, 16, false);
  OperatorKernel k = identity_kernel(dom);  // all eigenvalues equal
  CHECK_THROWS_AS(eigensolve(k, 2), DegenerateSpectrumError);
}

TEST_CASE("eigensolve enforces the resolved-mode bound") {
  const auto dom = ptest::shared_domain(2.0, 6.0, 32, false);
  const HamiltonianSpec spec = make_hamiltonian_spec(2.0, dom, 2);
  CHECK_THROWS_AS(eigensolve(spec, 9), std::invalid_argument);  // 9 > 32/4
  CHECK_THROWS_AS(eigensolve(spec, 0), std::invalid_argument);
}

TEST_CASE("classify_phase flags synthetic conjugate pairs") {
  EigenSolution sol;
  sol.energies = {cplx(1.0, 0.1), cplx(1.0, -0.1), cplx(3.0, 0.0)};
  sol.modes = 3;
  const PhaseReport broken = classify_phase(sol);
  CHECK(broken.phase == Phase::Broken);
  REQUIRE(broken.conjugate_pairs.size() == 1);
  CHECK(broken.conjugate_pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});

  sol.energies = {cplx(1.0, 1e-9), cplx(3.0, -1e-9)};
  sol.modes = 2;
  CHECK(classify_phase(sol).phase == Phase::Unbroken);
}

TEST_CASE("unbroken solutions classify as unbroken") {
  CHECK(classify_phase(ptest::solution(3.0, 800, 8)).phase == Phase::Unbroken);
  CHECK(classify_phase(ptest::solution(2.0, 800, 8)).phase == Phase::Unbroken);
}
