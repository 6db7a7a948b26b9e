#pragma once

#include <vector>

#include "ptqm/config.hpp"
#include "ptqm/pt_algebra.hpp"

namespace ptqm::verify {

/// The full residual suite: PT/CPT norms, C-operator algebra, completeness,
/// pseudo-Hermiticity, norm conservation, probability and continuity, the
/// [H,x] identity and both Ehrenfest equalities. Per-check tolerances are
/// pinned here; reports come back sorted by name. Solver-level failures
/// (broken phase, sign pattern) surface as failed reports, not exceptions.
std::vector<ptalg::VerificationReport> run_suite(const cli::RunConfig& config);

bool all_passed(const std::vector<ptalg::VerificationReport>& reports);

}  // namespace ptqm::verify
