#include "ptqm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ptqm/dynamics.hpp"
#include "ptqm/eigensolve.hpp"
#include "ptqm/hamiltonian.hpp"
#include "ptqm/serialize.hpp"
#include "ptqm/verify.hpp"

namespace ptqm::cli {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
}

model::DomainPtr build_domain(const RunConfig& cfg) {
  if (cfg.use_wedge())
    return std::make_shared<const model::SpatialDomain>(
        model::make_wedge_domain(cfg.N, cfg.resolved_L(), cfg.grid));
  return std::make_shared<const model::SpatialDomain>(
      model::make_real_domain(cfg.resolved_L(), cfg.grid));
}

solver::EigenSolution solve(const RunConfig& cfg, std::size_t modes) {
  const solver::HamiltonianSpec spec =
      solver::make_hamiltonian_spec(cfg.N, build_domain(cfg), cfg.stencil_order);
  solver::SolverOptions opts;
  opts.phase_tol = cfg.phase_tol;
  opts.residual_tol = cfg.solver_tol;
  opts.separation_tol = cfg.separation_tol;
  return solver::eigensolve(spec, modes, opts);
}

}  // namespace

bool RunConfig::use_wedge() const {
  if (domain == "wedge") return true;
  if (domain == "real-line") return false;
  return N >= 4.0;  // auto: the real line stops converging at N = 4
}

double RunConfig::resolved_L() const {
  if (L > 0.0) return L;
  return use_wedge() ? 8.0 : 12.0;
}

std::string RunConfig::resolved_out_dir() const {
  if (!out_dir.empty()) return out_dir;
  if (const char* env = std::getenv("PTQM_OUT_DIR")) return env;
  return "out";
}

void RunConfig::validate() const {
  if (!(N >= 2.0)) throw std::invalid_argument("config: N must be >= 2");
  if (N != std::round(N) && !experimental)
    throw std::invalid_argument("config: non-integer N requires --experimental");
  if (grid < 8 || grid % 2 != 0)
    throw std::invalid_argument("config: grid must be even and >= 8");
  if (modes == 0) throw std::invalid_argument("config: modes must be positive");
  if (modes > grid / 4)
    throw std::invalid_argument("config: modes must not exceed grid/4");
  if (L < 0.0) throw std::invalid_argument("config: L must be positive (or 0 for the default)");
  if (domain != "auto" && domain != "real-line" && domain != "wedge")
    throw std::invalid_argument("config: domain must be auto, real-line or wedge");
  if (stencil_order != 2 && stencil_order != 4 && stencil_order != 6)
    throw std::invalid_argument("config: stencil order must be 2, 4 or 6");
  if (!(phase_tol > 0.0) || !(solver_tol > 0.0) || !(separation_tol > 0.0) ||
      !(representation_tol > 0.0))
    throw std::invalid_argument("config: tolerances must be positive");
  if (evolve.init != "gaussian" && evolve.init != "eigenstate")
    throw std::invalid_argument("config: init must be gaussian or eigenstate");
  if (!(evolve.dt > 0.0) || !(evolve.dt < evolve.t1 - evolve.t0))
    throw std::invalid_argument("config: need 0 < dt < t1 - t0");
  if (!(evolve.width > 0.0)) throw std::invalid_argument("config: width must be positive");
}

int cmd_spectrum(const RunConfig& cfg) {
  const std::filesystem::path dir(cfg.resolved_out_dir());
  std::filesystem::create_directories(dir);

  solver::EigenSolution sol;
  try {
    sol = solve(cfg, cfg.modes);
  } catch (const BrokenPhaseError& e) {
    std::cerr << "broken-phase-detected: " << e.what() << "\n";
    for (const cplx& z : e.offending)
      std::cerr << "  E = " << z.real() << (z.imag() < 0 ? " - " : " + ")
                << std::abs(z.imag()) << "i\n";
    return kExitBrokenPhase;
  } catch (const UnboundedSpectrumError& e) {
    std::cerr << "unbounded-spectrum: " << e.what() << "\n";
    return kExitBrokenPhase;
  }

  std::printf("%4s %18s %14s %6s %12s\n", "n", "Re E", "Im E", "sigma", "residual");
  for (std::size_t n = 0; n < sol.modes; ++n)
    std::printf("%4zu %18.10f %14.2e %6d %12.2e\n", n, sol.energies[n].real(),
                sol.energies[n].imag(), sol.pt_signs[n], sol.residuals[n]);
  if (!sol.sign_mismatches.empty()) {
    std::cerr << "warning: PT-norm sign ladder broken at modes";
    for (std::size_t n : sol.sign_mismatches) std::cerr << " " << n;
    std::cerr << " (under-resolved or junction-limited)\n";
  }

  write_text(dir / "spectrum.json", io::solution_json(sol).dump(2) + "\n");
  std::ofstream csv(dir / "eigenfunctions.csv");
  io::eigenfunctions_csv(csv, sol);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const std::filesystem::path dir(cfg.resolved_out_dir());
  std::filesystem::create_directories(dir);

  const std::vector<ptalg::VerificationReport> reports = verify::run_suite(cfg);
  for (const auto& r : reports)
    std::printf("[%s] %-36s residual=%11.3e tol=%9.1e\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.residual, r.tolerance);
  write_text(dir / "verification.json", io::reports_json(reports).dump(2) + "\n");
  return verify::all_passed(reports) ? kExitOk : kExitVerifyFailed;
}

int cmd_evolve(const RunConfig& cfg, bool with_ehrenfest) {
  const std::filesystem::path dir(cfg.resolved_out_dir());
  std::filesystem::create_directories(dir);

  solver::EigenSolution sol;
  try {
    sol = solve(cfg, cfg.modes);
  } catch (const BrokenPhaseError& e) {
    std::cerr << "broken-phase-detected: " << e.what() << "\n";
    return kExitBrokenPhase;
  } catch (const UnboundedSpectrumError& e) {
    std::cerr << "unbounded-spectrum: " << e.what() << "\n";
    return kExitBrokenPhase;
  }

  cvec coefficients;
  if (cfg.evolve.init == "eigenstate") {
    if (cfg.evolve.eigenstate_index >= sol.modes)
      throw std::invalid_argument("evolve: eigenstate index beyond retained modes");
    coefficients.assign(sol.modes, cplx{});
    coefficients[cfg.evolve.eigenstate_index] = 1.0;
  } else {
    const cvec psi0 = dynamics::gaussian_state(*sol.domain, cfg.evolve.center, cfg.evolve.width,
                                               cfg.evolve.momentum);
    try {
      coefficients =
          dynamics::expand_state(psi0, sol, cfg.representation_tol).coefficients;
    } catch (const PoorRepresentationError& e) {
      std::cerr << "poor-representation: truncation residual " << e.residual << "\n";
      return kExitPoorRepresentation;
    }
    double norm2 = 0.0;
    for (const cplx& c : coefficients) norm2 += std::norm(c);
    for (cplx& c : coefficients) c /= std::sqrt(norm2);
  }

  const dynamics::EvolutionTrace trace = dynamics::make_trace(
      coefficients, sol, cfg.evolve.t0, cfg.evolve.t1, cfg.evolve.dt, cfg.frames_csv);
  write_text(dir / "trace.json", io::trace_json(trace).dump(2) + "\n");

  if (cfg.frames_csv) {
    const std::size_t stride = std::max<std::size_t>(1, trace.states.size() / 100);
    for (std::size_t i = 0; i < trace.states.size(); i += stride) {
      char name[64];
      std::snprintf(name, sizeof(name), "frame_%06zu.csv", i);
      std::ofstream os(dir / name);
      io::frame_csv(os, *sol.domain, trace.states[i]);
    }
  }

  if (with_ehrenfest) {
    const dynamics::EhrenfestReports er = dynamics::ehrenfest_report(trace);
    std::vector<ptalg::VerificationReport> reports{er.x, er.p};
    for (const auto& r : reports)
      std::printf("[%s] %-20s residual=%11.3e tol=%9.1e\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.residual, r.tolerance);
    write_text(dir / "verification.json", io::reports_json(reports).dump(2) + "\n");
    if (!(er.x.passed && er.p.passed)) return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace ptqm::cli
