#pragma once

#include <cstdint>
#include <string>

#include "ptqm/types.hpp"

namespace ptqm::cli {

struct EvolveConfig {
  std::string init = "gaussian";  // gaussian | eigenstate
  std::size_t eigenstate_index = 0;
  double center = 0.5;
  double width = 1.0;
  double momentum = 0.0;
  double t0 = 0.0;
  double t1 = 5.0;
  double dt = 1e-3;
};

struct RunConfig {
  double N = 2.0;
  double L = 0.0;            // 0 = default: 12 on the real line, 8 on wedge rays
  std::size_t grid = 1000;   // M_grid
  std::size_t modes = 10;    // retained modes M
  std::string domain = "auto";  // auto | real-line | wedge
  int stencil_order = 6;

  double phase_tol = 1e-6;
  double solver_tol = 1e-8;
  double separation_tol = 1e-9;
  double representation_tol = 1e-3;

  EvolveConfig evolve;

  std::string out_dir;  // empty: $PTQM_OUT_DIR, else "out"
  bool frames_csv = false;
  bool experimental = false;  // allows non-integer N
  std::uint64_t seed = 12345;

  bool use_wedge() const;
  double resolved_L() const;
  std::string resolved_out_dir() const;

  /// Throws std::invalid_argument on broken invariants.
  void validate() const;
};

}  // namespace ptqm::cli
