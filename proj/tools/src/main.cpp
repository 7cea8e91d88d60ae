// topo_cqed — CLI for the cavity-coupled SSH qubit array simulations:
// spectroscopy sweeps, coupling spectra, dispersive dynamics, waveguide
// scattering, coupler design maps, disorder ensembles, the master-equation
// oracle check, and the acceptance suite.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "tcqed/errors.hpp"
#include "tcqed/units.hpp"

namespace {

struct CommonOpts {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<std::string> output;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config, "JSON config file (flags override it)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", opts.seed,
                    "RNG seed (fallback: config, then TOPO_CQED_SEED env var)");
    cmd->add_option("-j,--jobs", opts.jobs, "worker threads for grid sweeps");
    cmd->add_option("-o,--output", opts.output, "output path prefix");
}

int dispatch(const std::string& name, const CommonOpts& opts,
             int (*fn)(const tcqed::cli::RunConfig&)) {
    const auto cfg =
        tcqed::cli::load_config(name, opts.config, opts.seed, opts.jobs, opts.output);
    return fn(cfg);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "topo_cqed: cavity-coupled SSH qubit array simulations.\n"
        "Frequencies in configs are linear MHz/GHz, inductances nH; CSV output\n"
        "uses linear MHz.  Every run writes a <output>.meta.json sidecar with\n"
        "the resolved parameters, seed, version, and wall time."};
    app.require_subcommand(1);
    app.set_version_flag("--version", tcqed::units::version);

    CommonOpts opts;
    int rc = 0;

    auto* map = app.add_subcommand(
        "spectroscopy-map",
        "Reflection map R(phi, omega_l) of the driven cavity-array system.\n"
        "CSV: phi,omega_l_MHz,R,T; overlay CSV: phi,omega_j_MHz.");
    add_common(map, opts);
    map->callback([&] { rc = dispatch("spectroscopy-map", opts,
                                           tcqed::cli::cmd_spectroscopy_map); });

    auto* coupling = app.add_subcommand(
        "coupling-spectrum",
        "Cavity-eigenmode coupling coefficients: per-mode table, size sweep of\n"
        "the mid-gap pair, and xi(phi) sweeps.\n"
        "CSV: j,omega_j_MHz,xi,epsilon,parity,class / n_cells,xi_N,xi_N1 /\n"
        "phi,n_cells,xi_N,xi_N1,epsilon_2N.");
    add_common(coupling, opts);
    coupling->callback([&] { rc = dispatch("coupling-spectrum", opts,
                                                tcqed::cli::cmd_coupling_spectrum); });

    auto* rabi = app.add_subcommand(
        "rabi-dynamics",
        "Excitation dynamics under the dispersive effective Hamiltonian.\n"
        "CSV: time_us,site_1,...,site_2N,total_norm.");
    add_common(rabi, opts);
    bool decay_on = false, decay_off = false;
    rabi->add_flag("--decay", decay_on,
                   "include qubit decay with the Purcell-augmented rate");
    rabi->add_flag("--no-decay", decay_off, "Hermitian dynamics (period tests)");
    rabi->callback([&] {
        auto cfg = tcqed::cli::load_config("rabi-dynamics", opts.config, opts.seed,
                                           opts.jobs, opts.output);
        if (decay_on) cfg.dispersive.include_decay = true;
        if (decay_off) cfg.dispersive.include_decay = false;
        rc = tcqed::cli::cmd_rabi_dynamics(cfg);
    });

    auto* scatter = app.add_subcommand(
        "scattering",
        "Single-photon waveguide transport through the edge superatom.\n"
        "CSV: delta_p_over_GammaL,T,Re_chi,Im_chi,Im_peak1,Im_peak2.");
    add_common(scatter, opts);
    scatter->callback(
        [&] { rc = dispatch("scattering", opts, tcqed::cli::cmd_scattering); });

    auto* circuit = app.add_subcommand(
        "circuit-design",
        "Coupler phases and flux biases realizing t1(phi), t2(phi), plus the\n"
        "qubit-resonator coupling.  CSV: phi,delta_t1,delta_t2,phi_ext_t1,"
        "phi_ext_t2,g.");
    add_common(circuit, opts);
    circuit->callback([&] {
        rc = dispatch("circuit-design", opts, tcqed::cli::cmd_circuit_design);
    });

    auto* disorder = app.add_subcommand(
        "disorder-ensemble",
        "Seeded disorder ensemble of transmission spectra with Rabi-peak and\n"
        "transparency statistics.  CSV: seed,peak_lo_MHz,peak_hi_MHz,"
        "splitting_MHz,resolvable,transparency and omega_l_MHz,T_clean,T_seedK.");
    add_common(disorder, opts);
    disorder->callback([&] {
        rc = dispatch("disorder-ensemble", opts, tcqed::cli::cmd_disorder_ensemble);
    });

    auto* oracle = app.add_subcommand(
        "oracle-check",
        "Master-equation oracle vs the linearized reflection on a drive grid;\n"
        "prints a pass/fail table.  CSV: omega_l_MHz,R_linear,R_oracle,abs_diff.");
    add_common(oracle, opts);
    oracle->callback(
        [&] { rc = dispatch("oracle-check", opts, tcqed::cli::cmd_oracle_check); });

    auto* accept = app.add_subcommand(
        "accept", "Run the acceptance suite; one pass/fail line per criterion.");
    accept->callback([&] { rc = tcqed::cli::cmd_accept(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const tcqed::cli::config_error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return rc;
}
