// ptqm: spectra, CPT verification suites and time evolution for the
// Hamiltonian family p^2 - (ix)^N, driven by flags or a flat config file.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ptqm/cli.hpp"

namespace {

void add_common_options(CLI::App* sub, ptqm::cli::RunConfig& cfg, std::string& kernel) {
  sub->add_option("--N", cfg.N, "potential exponent N in p^2 - (ix)^N");
  sub->add_option("--L", cfg.L, "contour half-length (0 = default per domain kind)");
  sub->add_option("--grid", cfg.grid, "number of grid samples M_grid (even)");
  sub->add_option("--modes", cfg.modes, "retained eigenmodes M");
  sub->add_option("--domain", cfg.domain, "auto | real-line | wedge");
  sub->add_option("--stencil-order", cfg.stencil_order, "difference stencil order: 2, 4 or 6");
  sub->add_option("--phase-tol", cfg.phase_tol, "relative bound on |Im E|");
  sub->add_option("--solver-tol", cfg.solver_tol, "eigenpair residual bound");
  sub->add_option("--representation-tol", cfg.representation_tol,
                  "truncation residual bound for initial states");
  sub->add_option("--out", cfg.out_dir, "output directory (default $PTQM_OUT_DIR or ./out)");
  sub->add_option("--seed", cfg.seed, "seed for randomized verification states");
  sub->add_option("--kernel", kernel, "compute kernel backend: auto | scalar | avx2");
  sub->add_flag("--experimental", cfg.experimental, "allow non-integer N");
  sub->set_config("--config", "", "flat key=value config file; flags override it");
}

void add_evolve_options(CLI::App* sub, ptqm::cli::RunConfig& cfg) {
  sub->add_option("--init", cfg.evolve.init, "initial state: gaussian | eigenstate");
  sub->add_option("--eigenstate-index", cfg.evolve.eigenstate_index, "index for init=eigenstate");
  sub->add_option("--center", cfg.evolve.center, "gaussian center");
  sub->add_option("--width", cfg.evolve.width, "gaussian width");
  sub->add_option("--momentum", cfg.evolve.momentum, "gaussian momentum kick");
  sub->add_option("--t0", cfg.evolve.t0, "start time");
  sub->add_option("--t1", cfg.evolve.t1, "end time");
  sub->add_option("--dt", cfg.evolve.dt, "time step");
  sub->add_flag("--frames-csv", cfg.frames_csv, "stream wavefunction frames to CSV");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric quantum mechanics toolkit for H = p^2 - (ix)^N"};
  app.require_subcommand(1);

  ptqm::cli::RunConfig cfg;
  std::string kernel = "auto";

  CLI::App* spectrum = app.add_subcommand("spectrum", "solve and print the low-lying spectrum");
  CLI::App* verify = app.add_subcommand("verify", "run the full residual suite");
  CLI::App* evolve = app.add_subcommand("evolve", "evolve an initial state and record observables");
  CLI::App* ehrenfest =
      app.add_subcommand("ehrenfest", "evolve and check both Ehrenfest equalities");
  for (CLI::App* sub : {spectrum, verify, evolve, ehrenfest}) add_common_options(sub, cfg, kernel);
  for (CLI::App* sub : {evolve, ehrenfest}) add_evolve_options(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ptqm::cli::kExitConfig;
  }

  if (kernel == "scalar" || kernel == "avx2") setenv("PTQM_KERNEL", kernel.c_str(), 1);

  try {
    cfg.validate();
    if (spectrum->parsed()) return ptqm::cli::cmd_spectrum(cfg);
    if (verify->parsed()) return ptqm::cli::cmd_verify(cfg);
    if (evolve->parsed()) return ptqm::cli::cmd_evolve(cfg);
    if (ehrenfest->parsed()) return ptqm::cli::cmd_evolve(cfg, /*with_ehrenfest=*/true);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ptqm::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ptqm::cli::kExitConfig;
  }
  return ptqm::cli::kExitOk;
}
