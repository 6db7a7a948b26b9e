#pragma once

#include "ptqm/config.hpp"

namespace ptqm::cli {

// Exit codes: 0 success, 1 config error, 2 broken phase / unbounded spectrum,
// 3 failed verification checks, 4 poor eigenbasis representation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitBrokenPhase = 2;
inline constexpr int kExitVerifyFailed = 3;
inline constexpr int kExitPoorRepresentation = 4;

/// spectrum: solve, print the (n, Re E, Im E, sigma, residual) table, write
/// spectrum.json and eigenfunctions.csv.
int cmd_spectrum(const RunConfig& config);

/// verify: run the residual suite, print one line per check, write
/// verification.json.
int cmd_verify(const RunConfig& config);

/// evolve: expand the initial state, evolve, write trace.json (and CSV
/// frames when requested). with_ehrenfest additionally writes the Ehrenfest
/// reports to verification.json and gates the exit code on them.
int cmd_evolve(const RunConfig& config, bool with_ehrenfest = false);

}  // namespace ptqm::cli
