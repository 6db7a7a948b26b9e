#include "ptqm/serialize.hpp"

#include <cstdio>

namespace ptqm::io {
namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json complex_json(const cplx& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json complex_array_json(cspan v) {
  nlohmann::json a = nlohmann::json::array();
  for (const cplx& z : v) a.push_back(complex_json(z));
  return a;
}

nlohmann::json domain_json(const model::SpatialDomain& d) {
  nlohmann::json j{
      {"kind", d.kind == model::DomainKind::RealLine ? "real-line" : "wedge-rays"},
      {"L", d.extent},
      {"M_grid", d.count},
      {"points", complex_array_json(d.points)},
      {"weights", complex_array_json(d.weights)},
  };
  if (d.kind == model::DomainKind::WedgeRays) {
    j["N"] = d.exponent_hint;
    j["wedge_angle"] = d.wedge_angle;
  }
  return j;
}

nlohmann::json solution_json(const solver::EigenSolution& sol) {
  return nlohmann::json{
      {"N", sol.exponent},
      {"L", sol.domain->extent},
      {"M_grid", sol.domain->count},
      {"M", sol.modes},
      {"stencil_order", sol.stencil_order},
      {"energies", complex_array_json(sol.energies)},
      {"pt_signs", sol.pt_signs},
      {"residuals", sol.residuals},
      {"pt_phase_residuals", sol.pt_phase_residuals},
  };
}

nlohmann::json report_json(const ptalg::VerificationReport& r) {
  return nlohmann::json{
      {"name", r.name},
      {"residual", r.residual},
      {"tolerance", r.tolerance},
      {"passed", r.passed},
      {"context", r.context.is_null() ? nlohmann::json::object() : r.context},
  };
}

nlohmann::json reports_json(const std::vector<ptalg::VerificationReport>& rs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rs) a.push_back(report_json(r));
  return a;
}

nlohmann::json trace_json(const dynamics::EvolutionTrace& t) {
  nlohmann::json norms = nlohmann::json::array();
  for (const cplx& n : t.norms) norms.push_back(n.real());
  return nlohmann::json{
      {"times", t.times},
      {"norms", norms},
      {"x_expect", complex_array_json(t.x_expect)},
      {"p_expect", complex_array_json(t.p_expect)},
      {"dvdx_expect", complex_array_json(t.dvdx_expect)},
  };
}

void eigenfunctions_csv(std::ostream& os, const solver::EigenSolution& sol) {
  const model::SpatialDomain& d = *sol.domain;
  os << "k,re_x,im_x";
  for (std::size_t n = 0; n < sol.modes; ++n) os << ",re_psi_" << n << ",im_psi_" << n;
  os << "\n";
  for (std::size_t k = 0; k < d.count; ++k) {
    os << k << "," << fmt17(d.points[k].real()) << "," << fmt17(d.points[k].imag());
    for (std::size_t n = 0; n < sol.modes; ++n)
      os << "," << fmt17(sol.states[n][k].real()) << "," << fmt17(sol.states[n][k].imag());
    os << "\n";
  }
}

void frame_csv(std::ostream& os, const model::SpatialDomain& d, const dynamics::WaveState& s) {
  os << "k,re_x,im_x,re_psi,im_psi\n";
  for (std::size_t k = 0; k < d.count; ++k)
    os << k << "," << fmt17(d.points[k].real()) << "," << fmt17(d.points[k].imag()) << ","
       << fmt17(s.amplitudes[k].real()) << "," << fmt17(s.amplitudes[k].imag()) << "\n";
}

}  // namespace ptqm::io
