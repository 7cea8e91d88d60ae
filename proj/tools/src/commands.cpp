#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <vector>

#include "tcqed/acceptance.hpp"
#include "tcqed/circuit.hpp"
#include "tcqed/dispersive.hpp"
#include "tcqed/numerics.hpp"
#include "tcqed/oracle.hpp"
#include "tcqed/scattering.hpp"
#include "tcqed/spectroscopy.hpp"
#include "tcqed/units.hpp"

namespace tcqed::cli {

using nlohmann::json;

namespace {

// 12 significant digits; golden-file comparisons apply tolerances downstream.
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

class Artifacts {
  public:
    Artifacts(std::string command, const RunConfig& cfg)
        : command_(std::move(command)), cfg_(cfg),
          start_(std::chrono::steady_clock::now()) {}

    std::ofstream open_csv(const std::string& suffix) {
        const std::string path = cfg_.output + suffix;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        outputs_.push_back(path);
        return out;
    }

    void add_metadata(const std::string& key, const json& value) {
        extra_[key] = value;
    }

    void finalize() {
        const auto elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count();
        json meta;
        meta["command"] = command_;
        meta["version"] = units::version;
        meta["seed"] = cfg_.seed;
        meta["parameters"] = config_to_json(command_, cfg_);
        meta["outputs"] = outputs_;
        meta["wall_time_s"] = elapsed;
        for (const auto& [k, v] : extra_.items()) meta[k] = v;
        const std::string path = cfg_.output + ".meta.json";
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        out << meta.dump(2) << '\n';
    }

  private:
    std::string command_;
    const RunConfig& cfg_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> outputs_;
    json extra_ = json::object();
};

} // namespace

int cmd_spectroscopy_map(const RunConfig& cfg) {
    Artifacts artifacts("spectroscopy-map", cfg);
    const auto phi = cfg.phi_grid.values();
    const auto drive = cfg.drive_grid.values();
    const auto map = reflection_map(cfg.array, cfg.cavity, phi, drive, cfg.jobs);

    auto csv = artifacts.open_csv(".csv");
    csv << "phi,omega_l_MHz,R,T\n";
    for (Eigen::Index r = 0; r < phi.size(); ++r)
        for (Eigen::Index c = 0; c < drive.size(); ++c) {
            const double refl = map.reflection(r, c);
            csv << num(phi[r]) << ',' << num(units::to_mhz(drive[c])) << ','
                << num(refl) << ',' << num(1.0 - refl) << '\n';
        }

    const auto energies = eigenenergies_vs_phi(cfg.array, phi);
    auto overlay = artifacts.open_csv("_overlay.csv");
    overlay << "phi,omega_j_MHz\n";
    for (Eigen::Index j = 0; j < energies.cols(); ++j)
        for (Eigen::Index r = 0; r < phi.size(); ++r)
            overlay << num(phi[r]) << ',' << num(units::to_mhz(energies(r, j))) << '\n';

    artifacts.finalize();
    return 0;
}

int cmd_coupling_spectrum(const RunConfig& cfg) {
    Artifacts artifacts("coupling-spectrum", cfg);

    {
        const auto modes = eigensystem(cfg.array);
        auto csv = artifacts.open_csv("_modes.csv");
        csv << "j,omega_j_MHz,xi,epsilon,parity,class\n";
        for (const auto& m : modes)
            csv << m.index << ',' << num(units::to_mhz(m.energy)) << ','
                << num(m.coupling) << ','
                << num(rescaling_factor(m.coupling, cfg.array.n_cells)) << ','
                << to_string(m.parity) << ',' << to_string(m.mode_class) << '\n';

        // Mid-gap amplitude vectors in the site/sublattice serialization.
        auto lo = artifacts.open_csv("_midgap_lo.csv");
        write_amplitudes_csv(lo, modes[cfg.array.n_cells - 1].amplitudes);
        auto hi = artifacts.open_csv("_midgap_hi.csv");
        write_amplitudes_csv(hi, modes[cfg.array.n_cells].amplitudes);
    }

    {
        auto csv = artifacts.open_csv("_size_sweep.csv");
        csv << "n_cells,xi_N,xi_N1\n";
        for (int n = cfg.size_min; n <= cfg.size_max; ++n) {
            ArrayParams array = cfg.array;
            array.n_cells = n;
            array.qubit_decays = Eigen::VectorXd::Constant(2 * n, cfg.array.qubit_decays[0]);
            array.frequency_offsets = Eigen::VectorXd::Zero(2 * n);
            const auto modes = eigensystem(array);
            csv << n << ',' << num(modes[n - 1].coupling) << ','
                << num(modes[n].coupling) << '\n';
        }
    }

    {
        auto csv = artifacts.open_csv("_phi_sweep.csv");
        csv << "phi,n_cells,xi_N,xi_N1,epsilon_2N\n";
        const auto phis = cfg.coupling_phi_grid.values();
        for (int n : cfg.phi_sweep_sizes) {
            for (Eigen::Index i = 0; i < phis.size(); ++i) {
                ArrayParams array = cfg.array;
                array.n_cells = n;
                array.phi = phis[i];
                array.qubit_decays =
                    Eigen::VectorXd::Constant(2 * n, cfg.array.qubit_decays[0]);
                array.frequency_offsets = Eigen::VectorXd::Zero(2 * n);
                const auto modes = eigensystem(array);
                csv << num(phis[i]) << ',' << n << ',' << num(modes[n - 1].coupling)
                    << ',' << num(modes[n].coupling) << ','
                    << num(rescaling_factor(modes[2 * n - 1].coupling, n)) << '\n';
            }
        }
    }

    artifacts.finalize();
    return 0;
}

int cmd_rabi_dynamics(const RunConfig& cfg) {
    Artifacts artifacts("rabi-dynamics", cfg);
    if (cfg.dispersive.strained()) {
        std::fprintf(stderr,
                     "warning: |g0/Delta0| = %.3f exceeds 0.2; the dispersive "
                     "expansion is strained\n",
                     std::abs(cfg.dispersive.ratio()));
        artifacts.add_metadata("dispersive_strained", true);
    }
    ArrayParams array = cfg.array;
    if (cfg.disorder_strength > 0.0)
        array = disorder_sample(array, cfg.disorder_strength, cfg.seed);
    const auto h = effective_hamiltonian_qubits(array, cfg.dispersive);
    const auto times = cfg.time_grid.values();
    const auto trace = evolve_excitation(h, cfg.initial_site, times);

    auto csv = artifacts.open_csv(".csv");
    csv << "time_us";
    for (int s = 1; s <= array.n_sites(); ++s) csv << ",site_" << s;
    csv << ",total_norm\n";
    for (Eigen::Index i = 0; i < times.size(); ++i) {
        csv << num(trace.times[i]);
        for (int s = 0; s < array.n_sites(); ++s) csv << ',' << num(trace.populations(i, s));
        csv << ',' << num(trace.norm[i]) << '\n';
    }

    artifacts.add_metadata("propagator", to_string(trace.propagator));
    try {
        const auto osc = measure_oscillation_period(trace, cfg.measure_site);
        artifacts.add_metadata("oscillation",
                               json{{"period_us", osc.period},
                                    {"j_est_mhz", units::to_mhz(osc.coupling)}});
    } catch (const no_oscillation_error& e) {
        artifacts.add_metadata("oscillation", json{{"error", e.what()}});
    }
    artifacts.finalize();
    return 0;
}

int cmd_scattering(const RunConfig& cfg) {
    Artifacts artifacts("scattering", cfg);
    const auto grid = cfg.scattering_grid.values();
    const auto poles = decompose_poles(cfg.scattering);

    auto component_im = [&](int which, double d) {
        return std::imag(poles.residues[which] / (d - poles.poles[which]));
    };

    auto csv = artifacts.open_csv(".csv");
    csv << "delta_p_over_GammaL,T,Re_chi,Im_chi,Im_peak1,Im_peak2\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const auto t = transmission_amplitude(grid[i], cfg.scattering);
        const auto chi = susceptibility_closed_form(grid[i], cfg.scattering);
        csv << num(grid[i]) << ',' << num(std::norm(t)) << ',' << num(chi.real())
            << ',' << num(chi.imag()) << ',' << num(component_im(0, grid[i])) << ','
            << num(component_im(1, grid[i])) << '\n';
    }

    const auto report = classify_transparency(cfg.scattering);
    artifacts.add_metadata(
        "transparency",
        json{{"class", to_string(report.cls)},
             {"component_peak_distance", report.component_peak_distance},
             {"dip_distance", report.dip_distance},
             {"two_j", report.two_j}});
    artifacts.finalize();
    return 0;
}

int cmd_circuit_design(const RunConfig& cfg) {
    Artifacts artifacts("circuit-design", cfg);
    const auto phis = linspace(0.0, std::numbers::pi, cfg.circuit_phi_count);
    const double g = qubit_resonator_coupling(cfg.resonator, cfg.coupler.qubit_freq);

    auto csv = artifacts.open_csv(".csv");
    csv << "phi,delta_t1,delta_t2,phi_ext_t1,phi_ext_t2,g\n";
    for (Eigen::Index i = 0; i < phis.size(); ++i) {
        const auto [t1, t2] = couplings_from_phi(cfg.circuit_t0, phis[i]);
        const double d1 = delta_for_coupling(cfg.coupler, t1, CouplingSign::Positive);
        const double d2 = delta_for_coupling(cfg.coupler, t2, CouplingSign::Positive);
        csv << num(phis[i]) << ',' << num(d1) << ',' << num(d2) << ','
            << num(flux_for_delta(cfg.coupler, d1)) << ','
            << num(flux_for_delta(cfg.coupler, d2)) << ',' << num(units::to_mhz(g))
            << '\n';
    }

    const auto shifts = frequency_shifts(cfg.circuit_t0, cfg.circuit_t0,
                                         cfg.cavity_g0, cfg.coupler.qubit_freq);
    artifacts.add_metadata(
        "shifts", json{{"delta_omega_mhz", units::to_mhz(shifts.qubit_shift)},
                       {"delta_g_mhz", units::to_mhz(shifts.coupling_shift)}});
    artifacts.finalize();
    return 0;
}

int cmd_disorder_ensemble(const RunConfig& cfg) {
    Artifacts artifacts("disorder-ensemble", cfg);
    const auto grid = cfg.drive_grid.values();
    const double omega0 = cfg.array.qubit_freq;

    auto transmission_curve = [&](const ArrayParams& array) {
        Eigen::VectorXd t(grid.size());
        parallel_for(static_cast<std::size_t>(grid.size()), cfg.jobs,
                     [&](std::size_t i) {
                         CavityParams cav = cfg.cavity;
                         cav.drive_freq = grid[static_cast<Eigen::Index>(i)];
                         t[static_cast<Eigen::Index>(i)] =
                             steady_state_reflection(array, cav).transmission;
                     });
        return t;
    };
    auto transmission_at = [&](const ArrayParams& array, double omega) {
        CavityParams cav = cfg.cavity;
        cav.drive_freq = omega;
        return steady_state_reflection(array, cav).transmission;
    };

    const auto clean = transmission_curve(cfg.array);
    const double t_clean_center = transmission_at(cfg.array, omega0);

    std::vector<Eigen::VectorXd> curves;
    auto summary = artifacts.open_csv("_summary.csv");
    summary << "seed,peak_lo_MHz,peak_hi_MHz,splitting_MHz,resolvable,transparency\n";
    int resolvable_count = 0;
    for (int k = 1; k <= cfg.disorder_samples; ++k) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(k);
        const auto sample = disorder_sample(cfg.array, cfg.disorder_strength, seed);
        curves.push_back(transmission_curve(sample));
        const auto peaks = find_rabi_peaks(grid, curves.back(), cfg.array.phi,
                                           cfg.cavity_g0, cfg.cavity.kappa,
                                           cfg.array.qubit_decays[0]);
        const double t_center = transmission_at(sample, omega0);
        const bool transparent = t_center > std::max(1e-4, 10.0 * t_clean_center);
        resolvable_count += peaks.resolvable ? 1 : 0;
        summary << seed << ','
                << num(peaks.positions.size() > 0 ? units::to_mhz(peaks.positions[0]) : 0.0)
                << ','
                << num(peaks.positions.size() > 1 ? units::to_mhz(peaks.positions[1]) : 0.0)
                << ',' << num(units::to_mhz(peaks.splitting)) << ','
                << (peaks.resolvable ? 1 : 0) << ',' << (transparent ? 1 : 0) << '\n';
    }

    auto spectra = artifacts.open_csv("_spectra.csv");
    spectra << "omega_l_MHz,T_clean";
    for (int k = 1; k <= cfg.disorder_samples; ++k) spectra << ",T_seed" << k;
    spectra << '\n';
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        spectra << num(units::to_mhz(grid[i])) << ',' << num(clean[i]);
        for (const auto& curve : curves) spectra << ',' << num(curve[i]);
        spectra << '\n';
    }

    artifacts.add_metadata("resolvable_count", resolvable_count);
    artifacts.finalize();
    return 0;
}

int cmd_oracle_check(const RunConfig& cfg) {
    Artifacts artifacts("oracle-check", cfg);
    TruncatedSystem sys;
    sys.array = cfg.array;
    sys.cavity = cfg.cavity;
    sys.photon_cutoff = 2;
    if (sys.cavity.drive_strength <= 0.0 ||
        sys.cavity.drive_strength > sys.cavity.kappa / 50.0)
        sys.cavity.drive_strength = sys.cavity.kappa / 100.0;

    const auto grid = cfg.drive_grid.values();
    auto csv = artifacts.open_csv(".csv");
    csv << "omega_l_MHz,R_linear,R_oracle,abs_diff\n";

    std::printf("%14s %12s %12s %12s  %s\n", "omega_l [MHz]", "R_linear",
                "R_oracle", "|diff|", "status");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        sys.cavity.drive_freq = grid[i];
        const double r_oracle = lindblad_steady_state(sys).reflection;
        const double r_linear = steady_state_reflection(sys.array, sys.cavity).reflection;
        const double diff = std::abs(r_oracle - r_linear);
        worst = std::max(worst, diff);
        csv << num(units::to_mhz(grid[i])) << ',' << num(r_linear) << ','
            << num(r_oracle) << ',' << num(diff) << '\n';
        std::printf("%14.4f %12.6f %12.6f %12.3e  %s\n", units::to_mhz(grid[i]),
                    r_linear, r_oracle, diff, diff < 1e-3 ? "ok" : "FAIL");
    }
    const bool passed = worst < 1e-3;
    std::printf("max |R_linear - R_oracle| = %.3e -> %s\n", worst,
                passed ? "PASS" : "FAIL");
    artifacts.add_metadata("max_abs_diff", worst);
    artifacts.add_metadata("passed", passed);
    artifacts.finalize();
    return passed ? 0 : 4;
}

int cmd_accept() {
    return run_acceptance_and_print(std::cout) ? 0 : 4;
}

} // namespace tcqed::cli
