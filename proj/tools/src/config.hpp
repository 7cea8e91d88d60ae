// config.hpp — JSON run-configuration parsing for the CLI: strict schemas
// (unknown keys rejected), unit-suffixed quantities converted to the internal
// rad/us convention, and per-subcommand defaults.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tcqed/circuit.hpp"
#include "tcqed/dispersive.hpp"
#include "tcqed/lattice.hpp"
#include "tcqed/scattering.hpp"
#include "tcqed/spectroscopy.hpp"

namespace tcqed::cli {

// Schema violations carry the offending field path for the diagnostics.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double min{0.0};
    double max{0.0};
    int count{0};

    Eigen::VectorXd values() const;
};

// Everything a subcommand may need; sections are defaulted to the desk-scale
// parameter set and overridden by the config file.
struct RunConfig {
    std::uint64_t seed{0};
    int jobs{0};  // 0 = hardware concurrency
    std::string output{"out"};

    ArrayParams array;
    CavityParams cavity;             // coupling_vector materialized from the
                                     // pattern below once the size is known
    double cavity_g0{0.0};
    std::string pattern_name{"homogeneous"};
    std::vector<double> pattern_custom;

    DispersiveParams dispersive;
    ScatteringParams scattering;
    GridSpec scattering_grid;        // detuning in Gamma_L units

    GridSpec phi_grid;               // radians
    GridSpec drive_grid;             // rad/us
    GridSpec time_grid;              // us

    int initial_site{0};             // zero-based internally; 1-based in configs
    int measure_site{0};

    // circuit-design
    CouplerCircuit coupler;
    ResonatorCoupler resonator;
    double circuit_t0{0.0};
    int circuit_phi_count{101};

    // disorder-ensemble
    double disorder_strength{0.0};
    int disorder_samples{10};

    // coupling-spectrum sweeps
    int size_min{2};
    int size_max{30};
    std::vector<int> phi_sweep_sizes{6, 18, 78};
    GridSpec coupling_phi_grid;      // radians
};

// Builds the defaults, merges the optional config file, then applies CLI
// overrides.  Throws config_error with a field path on schema violations.
RunConfig load_config(const std::string& command,
                      const std::optional<std::string>& config_path,
                      const std::optional<std::uint64_t>& seed_override,
                      const std::optional<int>& jobs_override,
                      const std::optional<std::string>& output_override);

// Resolved parameters for the metadata sidecar.
nlohmann::json config_to_json(const std::string& command, const RunConfig& cfg);

} // namespace tcqed::cli
