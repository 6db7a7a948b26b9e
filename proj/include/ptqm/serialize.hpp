#pragma once

#include <ostream>

#include "json.hpp"
#include "ptqm/domain.hpp"
#include "ptqm/dynamics.hpp"
#include "ptqm/eigensolve.hpp"
#include "ptqm/pt_algebra.hpp"

namespace ptqm::io {

nlohmann::json complex_json(const cplx& z);
nlohmann::json complex_array_json(cspan v);

nlohmann::json domain_json(const model::SpatialDomain& d);
nlohmann::json solution_json(const solver::EigenSolution& sol);
nlohmann::json report_json(const ptalg::VerificationReport& r);
nlohmann::json reports_json(const std::vector<ptalg::VerificationReport>& rs);
nlohmann::json trace_json(const dynamics::EvolutionTrace& t);

/// CSV with a header row: k, re x_k, im x_k, then re/im psi_n per mode.
void eigenfunctions_csv(std::ostream& os, const solver::EigenSolution& sol);

/// One frame per stored state: k, re x, im x, re Psi, im Psi.
void frame_csv(std::ostream& os, const model::SpatialDomain& d, const dynamics::WaveState& s);

}  // namespace ptqm::io
