// commands.hpp — one entry point per CLI subcommand; each writes CSV
// artifacts plus a JSON metadata sidecar and returns a process exit code.

#pragma once

#include "config.hpp"

namespace tcqed::cli {

int cmd_spectroscopy_map(const RunConfig& cfg);
int cmd_coupling_spectrum(const RunConfig& cfg);
int cmd_rabi_dynamics(const RunConfig& cfg);
int cmd_scattering(const RunConfig& cfg);
int cmd_circuit_design(const RunConfig& cfg);
int cmd_disorder_ensemble(const RunConfig& cfg);
int cmd_oracle_check(const RunConfig& cfg);
int cmd_accept();

} // namespace tcqed::cli
