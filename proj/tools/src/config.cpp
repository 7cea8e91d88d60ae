#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <thread>

#include "tcqed/numerics.hpp"
#include "tcqed/units.hpp"

namespace tcqed::cli {

using nlohmann::json;

Eigen::VectorXd GridSpec::values() const { return linspace(min, max, count); }

namespace {

constexpr double pi = std::numbers::pi;

void require_keys(const json& j, const std::string& path,
                  const std::set<std::string>& allowed) {
    if (!j.is_object())
        throw config_error("config error at '" + path + "': expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key))
            throw config_error("config error at '" + path + "': unknown key '" + key + "'");
    }
}

double get_number(const json& j, const std::string& path, const std::string& key,
                  double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw config_error("config error at '" + path + "." + key + "': expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& path, const std::string& key,
            int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer())
        throw config_error("config error at '" + path + "." + key +
                           "': expected an integer");
    return j.at(key).get<int>();
}

bool get_bool(const json& j, const std::string& path, const std::string& key,
              bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean())
        throw config_error("config error at '" + path + "." + key + "': expected a bool");
    return j.at(key).get<bool>();
}

GridSpec get_grid(const json& j, const std::string& path, const std::string& key,
                  GridSpec fallback) {
    if (!j.contains(key)) return fallback;
    const json& g = j.at(key);
    require_keys(g, path + "." + key, {"min", "max", "count"});
    GridSpec spec;
    spec.min = get_number(g, path + "." + key, "min", fallback.min);
    spec.max = get_number(g, path + "." + key, "max", fallback.max);
    spec.count = get_int(g, path + "." + key, "count", fallback.count);
    if (spec.count < 1)
        throw config_error("config error at '" + path + "." + key + ".count': must be >= 1");
    return spec;
}

void parse_array_section(const json& j, RunConfig& cfg) {
    const std::string path = "array";
    require_keys(j, path,
                 {"n_cells", "qubit_freq_ghz", "t0_mhz", "phi_over_pi", "gamma_mhz",
                  "frequency_offsets_mhz"});
    const int n_cells = get_int(j, path, "n_cells", cfg.array.n_cells);
    if (n_cells < 1)
        throw config_error("config error at 'array.n_cells': must be >= 1");
    const double omega0 = units::ghz(
        get_number(j, path, "qubit_freq_ghz", cfg.array.qubit_freq / units::ghz(1.0)));
    const double t0 =
        units::mhz(get_number(j, path, "t0_mhz", units::to_mhz(cfg.array.t0)));
    const double phi = pi * get_number(j, path, "phi_over_pi", cfg.array.phi / pi);

    Eigen::VectorXd decays;
    if (j.contains("gamma_mhz") && j.at("gamma_mhz").is_array()) {
        const auto vals = j.at("gamma_mhz").get<std::vector<double>>();
        if (static_cast<int>(vals.size()) != 2 * n_cells)
            throw config_error("config error at 'array.gamma_mhz': need 2N entries");
        decays.resize(2 * n_cells);
        for (int i = 0; i < 2 * n_cells; ++i) decays[i] = units::mhz(vals[i]);
    } else {
        const double uniform = get_number(
            j, path, "gamma_mhz",
            units::to_mhz(cfg.array.qubit_decays.size() ? cfg.array.qubit_decays[0] : 0.0));
        decays = Eigen::VectorXd::Constant(2 * n_cells, units::mhz(uniform));
    }

    Eigen::VectorXd offsets = Eigen::VectorXd::Zero(2 * n_cells);
    if (j.contains("frequency_offsets_mhz")) {
        if (!j.at("frequency_offsets_mhz").is_array())
            throw config_error(
                "config error at 'array.frequency_offsets_mhz': expected a list");
        const auto vals = j.at("frequency_offsets_mhz").get<std::vector<double>>();
        if (static_cast<int>(vals.size()) != 2 * n_cells)
            throw config_error(
                "config error at 'array.frequency_offsets_mhz': need 2N entries");
        for (int i = 0; i < 2 * n_cells; ++i) offsets[i] = units::mhz(vals[i]);
    }

    cfg.array.n_cells = n_cells;
    cfg.array.qubit_freq = omega0;
    cfg.array.t0 = t0;
    cfg.array.phi = phi;
    cfg.array.qubit_decays = decays;
    cfg.array.frequency_offsets = offsets;
    cfg.array.validate();
}

void parse_cavity_section(const json& j, RunConfig& cfg) {
    const std::string path = "cavity";
    require_keys(j, path, {"freq_ghz", "kappa_mhz", "g0_mhz", "pattern", "eta_mhz"});
    cfg.cavity.cavity_freq = units::ghz(
        get_number(j, path, "freq_ghz", cfg.cavity.cavity_freq / units::ghz(1.0)));
    cfg.cavity.kappa =
        units::mhz(get_number(j, path, "kappa_mhz", units::to_mhz(cfg.cavity.kappa)));
    cfg.cavity_g0 =
        units::mhz(get_number(j, path, "g0_mhz", units::to_mhz(cfg.cavity_g0)));
    cfg.cavity.drive_strength = units::mhz(
        get_number(j, path, "eta_mhz", units::to_mhz(cfg.cavity.drive_strength)));

    if (j.contains("pattern")) {
        const json& p = j.at("pattern");
        if (p.is_string()) {
            const std::string name = p.get<std::string>();
            if (name != "homogeneous" && name != "alternating-sign-8")
                throw config_error("config error at 'cavity.pattern': unknown pattern '" +
                                   name + "'");
            cfg.pattern_name = name;
            cfg.pattern_custom.clear();
        } else if (p.is_array()) {
            cfg.pattern_name = "custom";
            cfg.pattern_custom = p.get<std::vector<double>>();
        } else {
            throw config_error("config error at 'cavity.pattern': expected a name or a list");
        }
    }
}

void parse_dispersive_section(const json& j, RunConfig& cfg) {
    const std::string path = "dispersive";
    require_keys(j, path,
                 {"g0_mhz", "delta0_mhz", "include_decay", "kappa_mhz", "gamma_mhz"});
    cfg.dispersive.g0 =
        units::mhz(get_number(j, path, "g0_mhz", units::to_mhz(cfg.dispersive.g0)));
    cfg.dispersive.delta0 = units::mhz(
        get_number(j, path, "delta0_mhz", units::to_mhz(cfg.dispersive.delta0)));
    cfg.dispersive.include_decay =
        get_bool(j, path, "include_decay", cfg.dispersive.include_decay);
    cfg.dispersive.kappa =
        units::mhz(get_number(j, path, "kappa_mhz", units::to_mhz(cfg.dispersive.kappa)));
    cfg.dispersive.gamma =
        units::mhz(get_number(j, path, "gamma_mhz", units::to_mhz(cfg.dispersive.gamma)));
    cfg.dispersive.validate();
}

void parse_scattering_section(const json& j, RunConfig& cfg) {
    const std::string path = "scattering";
    require_keys(j, path,
                 {"j_over_gamma", "gamma_l_over_gamma", "gamma_r_over_gamma", "grid"});
    cfg.scattering.j_coupling =
        get_number(j, path, "j_over_gamma", cfg.scattering.j_coupling);
    cfg.scattering.gamma_left =
        get_number(j, path, "gamma_l_over_gamma", cfg.scattering.gamma_left);
    cfg.scattering.gamma_right =
        get_number(j, path, "gamma_r_over_gamma", cfg.scattering.gamma_right);
    cfg.scattering.gamma_wg = 1.0;
    cfg.scattering_grid = get_grid(j, path, "grid", cfg.scattering_grid);
    cfg.scattering.validate();
}

void parse_dynamics_section(const json& j, RunConfig& cfg) {
    const std::string path = "dynamics";
    require_keys(j, path, {"time_us", "initial_site", "measure_site"});
    cfg.time_grid = get_grid(j, path, "time_us", cfg.time_grid);
    // Sites are 1-based in configs, matching the CSV column labels.
    const int init = get_int(j, path, "initial_site", cfg.initial_site + 1);
    const int meas = get_int(j, path, "measure_site", cfg.measure_site + 1);
    if (init < 1 || init > cfg.array.n_sites())
        throw config_error("config error at 'dynamics.initial_site': out of range");
    if (meas < 1 || meas > cfg.array.n_sites())
        throw config_error("config error at 'dynamics.measure_site': out of range");
    cfg.initial_site = init - 1;
    cfg.measure_site = meas - 1;
}

void parse_grids_section(const json& j, RunConfig& cfg) {
    const std::string path = "grids";
    require_keys(j, path, {"phi_over_pi", "omega_l_mhz"});
    if (j.contains("phi_over_pi")) {
        GridSpec in_pi{cfg.phi_grid.min / pi, cfg.phi_grid.max / pi, cfg.phi_grid.count};
        in_pi = get_grid(j, path, "phi_over_pi", in_pi);
        cfg.phi_grid = {in_pi.min * pi, in_pi.max * pi, in_pi.count};
    }
    if (j.contains("omega_l_mhz")) {
        GridSpec in_mhz{units::to_mhz(cfg.drive_grid.min),
                        units::to_mhz(cfg.drive_grid.max), cfg.drive_grid.count};
        in_mhz = get_grid(j, path, "omega_l_mhz", in_mhz);
        cfg.drive_grid = {units::mhz(in_mhz.min), units::mhz(in_mhz.max), in_mhz.count};
    }
}

void parse_circuit_section(const json& j, RunConfig& cfg) {
    const std::string path = "circuit";
    require_keys(j, path,
                 {"l_g_nh", "l_0_nh", "l_j_nh", "qubit_freq_ghz", "t0_mhz", "phi_count",
                  "resonator"});
    cfg.coupler.l_g = get_number(j, path, "l_g_nh", cfg.coupler.l_g);
    cfg.coupler.l_0 = get_number(j, path, "l_0_nh", cfg.coupler.l_0);
    cfg.coupler.l_j = get_number(j, path, "l_j_nh", cfg.coupler.l_j);
    cfg.coupler.qubit_freq = units::ghz(
        get_number(j, path, "qubit_freq_ghz", cfg.coupler.qubit_freq / units::ghz(1.0)));
    cfg.circuit_t0 =
        units::mhz(get_number(j, path, "t0_mhz", units::to_mhz(cfg.circuit_t0)));
    cfg.circuit_phi_count = get_int(j, path, "phi_count", cfg.circuit_phi_count);
    if (cfg.circuit_phi_count < 2)
        throw config_error("config error at 'circuit.phi_count': must be >= 2");
    if (j.contains("resonator")) {
        const json& r = j.at("resonator");
        const std::string rpath = path + ".resonator";
        require_keys(r, rpath,
                     {"lt_g_nh", "lt_0_nh", "l_c_nh", "freq_ghz", "delta_t_over_pi"});
        cfg.resonator.lt_g = get_number(r, rpath, "lt_g_nh", cfg.resonator.lt_g);
        cfg.resonator.lt_0 = get_number(r, rpath, "lt_0_nh", cfg.resonator.lt_0);
        cfg.resonator.l_c = get_number(r, rpath, "l_c_nh", cfg.resonator.l_c);
        cfg.resonator.cavity_freq = units::ghz(
            get_number(r, rpath, "freq_ghz", cfg.resonator.cavity_freq / units::ghz(1.0)));
        cfg.resonator.delta_t =
            pi * get_number(r, rpath, "delta_t_over_pi", cfg.resonator.delta_t / pi);
    }
    cfg.coupler.validate();
    cfg.resonator.validate();
}

void parse_disorder_section(const json& j, RunConfig& cfg) {
    const std::string path = "disorder";
    require_keys(j, path, {"epsilon_mhz", "samples"});
    cfg.disorder_strength = units::mhz(
        get_number(j, path, "epsilon_mhz", units::to_mhz(cfg.disorder_strength)));
    cfg.disorder_samples = get_int(j, path, "samples", cfg.disorder_samples);
    if (cfg.disorder_samples < 1)
        throw config_error("config error at 'disorder.samples': must be >= 1");
}

void parse_sweep_section(const json& j, RunConfig& cfg) {
    const std::string path = "sweep";
    require_keys(j, path, {"size_min", "size_max", "phi_sweep_sizes", "phi_over_pi"});
    cfg.size_min = get_int(j, path, "size_min", cfg.size_min);
    cfg.size_max = get_int(j, path, "size_max", cfg.size_max);
    if (cfg.size_min < 1 || cfg.size_max < cfg.size_min)
        throw config_error("config error at 'sweep.size_min/size_max': bad range");
    if (j.contains("phi_sweep_sizes")) {
        if (!j.at("phi_sweep_sizes").is_array())
            throw config_error("config error at 'sweep.phi_sweep_sizes': expected a list");
        cfg.phi_sweep_sizes = j.at("phi_sweep_sizes").get<std::vector<int>>();
        for (int n : cfg.phi_sweep_sizes)
            if (n < 1)
                throw config_error("config error at 'sweep.phi_sweep_sizes': sizes must be >= 1");
    }
    GridSpec in_pi{cfg.coupling_phi_grid.min / pi, cfg.coupling_phi_grid.max / pi,
                   cfg.coupling_phi_grid.count};
    in_pi = get_grid(j, path, "phi_over_pi", in_pi);
    cfg.coupling_phi_grid = {in_pi.min * pi, in_pi.max * pi, in_pi.count};
}

RunConfig make_defaults() {
    RunConfig cfg;
    cfg.array = ArrayParams::uniform(4, units::ghz(6.0), units::mhz(100.0), 0.25 * pi,
                                     units::mhz(0.02));
    cfg.cavity.cavity_freq = units::ghz(6.0);
    cfg.cavity.kappa = units::mhz(10.0);
    cfg.cavity.drive_freq = units::ghz(6.0);
    cfg.cavity.drive_strength = units::mhz(0.1);
    cfg.cavity_g0 = units::mhz(5.0);

    cfg.dispersive.g0 = units::mhz(5.0);
    cfg.dispersive.delta0 = units::mhz(50.0);
    cfg.dispersive.include_decay = false;
    cfg.dispersive.kappa = units::mhz(10.0);
    cfg.dispersive.gamma = units::mhz(0.02);

    cfg.scattering.j_coupling = 0.035;
    cfg.scattering.gamma_left = 0.15;
    cfg.scattering.gamma_right = 5e-4;
    cfg.scattering.gamma_wg = 1.0;
    cfg.scattering_grid = {-0.4, 0.4, 1601};

    cfg.phi_grid = {0.0, pi, 101};
    cfg.drive_grid = {units::ghz(6.0) - units::mhz(250.0),
                      units::ghz(6.0) + units::mhz(250.0), 501};
    cfg.time_grid = {0.0, 3.0, 1501};

    cfg.coupler.l_g = 0.25;
    cfg.coupler.l_0 = 0.566;
    cfg.coupler.l_j = 8.34;
    cfg.coupler.qubit_freq = units::ghz(6.0);
    cfg.circuit_t0 = units::mhz(100.0);
    cfg.circuit_phi_count = 101;
    cfg.resonator.lt_g = 0.25;
    cfg.resonator.lt_0 = 0.566;
    cfg.resonator.l_c = 2.0;
    cfg.resonator.cavity_freq = units::ghz(6.0);
    cfg.resonator.delta_t = 0.52 * pi;  // just past the sign flip: g ~ +5 MHz

    cfg.disorder_strength = 0.0;  // disorder is opt-in per command/config
    cfg.disorder_samples = 10;

    cfg.size_min = 2;
    cfg.size_max = 30;
    cfg.phi_sweep_sizes = {6, 18, 78};
    cfg.coupling_phi_grid = {0.0, 0.45 * pi, 46};
    return cfg;
}

// Subcommand-specific defaults on top of the shared ones.
void apply_command_defaults(const std::string& command, RunConfig& cfg) {
    if (command == "spectroscopy-map") {
        // 8-qubit array probed through the signed coupling pattern that makes
        // the edge-to-bulk transition visible.
        cfg.pattern_name = "alternating-sign-8";
    } else if (command == "coupling-spectrum") {
        cfg.array = ArrayParams::uniform(18, units::ghz(6.0), units::mhz(100.0),
                                         pi / 5.0, units::mhz(0.02));
    } else if (command == "rabi-dynamics") {
        cfg.array = ArrayParams::uniform(6, units::ghz(6.0), units::mhz(100.0),
                                         0.1 * pi, units::mhz(0.02));
    } else if (command == "disorder-ensemble") {
        cfg.array = ArrayParams::uniform(18, units::ghz(6.0), units::mhz(100.0),
                                         0.2 * pi, units::mhz(0.02));
        cfg.drive_grid = {units::ghz(6.0) - units::mhz(25.0),
                          units::ghz(6.0) + units::mhz(25.0), 1201};
        cfg.disorder_strength = units::mhz(2.0);
    } else if (command == "oracle-check") {
        cfg.array = ArrayParams::uniform(1, units::ghz(6.0), units::mhz(100.0),
                                         0.25 * pi, units::mhz(0.02));
        cfg.drive_grid = {units::ghz(6.0) - units::mhz(60.0),
                          units::ghz(6.0) + units::mhz(60.0), 41};
    }
}

void materialize_coupling_vector(RunConfig& cfg) {
    if (cfg.pattern_name == "homogeneous") {
        cfg.cavity.coupling_vector =
            cfg.cavity_g0 * coupling_pattern_homogeneous(cfg.array.n_cells);
    } else if (cfg.pattern_name == "alternating-sign-8") {
        if (cfg.array.n_cells != 4)
            throw config_error(
                "config error at 'cavity.pattern': alternating-sign-8 needs n_cells = 4");
        cfg.cavity.coupling_vector =
            cfg.cavity_g0 * coupling_pattern_alternating_sign_8();
    } else {
        if (static_cast<int>(cfg.pattern_custom.size()) != cfg.array.n_sites())
            throw config_error("config error at 'cavity.pattern': need 2N entries");
        Eigen::VectorXd pattern(cfg.array.n_sites());
        for (int i = 0; i < cfg.array.n_sites(); ++i) pattern[i] = cfg.pattern_custom[i];
        cfg.cavity.coupling_vector = cfg.cavity_g0 * pattern;
    }
    cfg.cavity.validate(cfg.array.n_sites());
}

} // namespace

RunConfig load_config(const std::string& command,
                      const std::optional<std::string>& config_path,
                      const std::optional<std::uint64_t>& seed_override,
                      const std::optional<int>& jobs_override,
                      const std::optional<std::string>& output_override) {
    RunConfig cfg = make_defaults();
    apply_command_defaults(command, cfg);
    cfg.output = command;
    for (char& ch : cfg.output)
        if (ch == '-') ch = '_';

    if (const char* env_seed = std::getenv("TOPO_CQED_SEED"))
        cfg.seed = std::strtoull(env_seed, nullptr, 10);

    if (config_path) {
        std::ifstream in(*config_path);
        if (!in)
            throw config_error("config error: cannot open '" + *config_path + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw config_error(std::string("config error: ") + e.what());
        }
        require_keys(j, "<root>",
                     {"seed", "jobs", "output", "array", "cavity", "dispersive",
                      "scattering", "dynamics", "grids", "circuit", "disorder", "sweep"});
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned())
                throw config_error("config error at 'seed': expected an unsigned integer");
            cfg.seed = j.at("seed").get<std::uint64_t>();
        }
        cfg.jobs = get_int(j, "<root>", "jobs", cfg.jobs);
        if (j.contains("output")) {
            if (!j.at("output").is_string())
                throw config_error("config error at 'output': expected a string");
            cfg.output = j.at("output").get<std::string>();
        }
        if (j.contains("array")) parse_array_section(j.at("array"), cfg);
        if (j.contains("cavity")) parse_cavity_section(j.at("cavity"), cfg);
        if (j.contains("dispersive")) parse_dispersive_section(j.at("dispersive"), cfg);
        if (j.contains("scattering")) parse_scattering_section(j.at("scattering"), cfg);
        if (j.contains("dynamics")) parse_dynamics_section(j.at("dynamics"), cfg);
        if (j.contains("grids")) parse_grids_section(j.at("grids"), cfg);
        if (j.contains("circuit")) parse_circuit_section(j.at("circuit"), cfg);
        if (j.contains("disorder")) parse_disorder_section(j.at("disorder"), cfg);
        if (j.contains("sweep")) parse_sweep_section(j.at("sweep"), cfg);
    }

    if (seed_override) cfg.seed = *seed_override;
    if (jobs_override) cfg.jobs = *jobs_override;
    if (output_override) cfg.output = *output_override;
    if (cfg.jobs <= 0)
        cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    materialize_coupling_vector(cfg);
    return cfg;
}

nlohmann::json config_to_json(const std::string& command, const RunConfig& cfg) {
    json j;
    j["command"] = command;
    j["seed"] = cfg.seed;
    j["jobs"] = cfg.jobs;
    j["array"] = {
        {"n_cells", cfg.array.n_cells},
        {"qubit_freq_ghz", cfg.array.qubit_freq / units::ghz(1.0)},
        {"t0_mhz", units::to_mhz(cfg.array.t0)},
        {"phi_over_pi", cfg.array.phi / pi},
        {"gamma_mhz",
         units::to_mhz(cfg.array.qubit_decays.size() ? cfg.array.qubit_decays[0] : 0.0)},
    };
    j["cavity"] = {
        {"freq_ghz", cfg.cavity.cavity_freq / units::ghz(1.0)},
        {"kappa_mhz", units::to_mhz(cfg.cavity.kappa)},
        {"g0_mhz", units::to_mhz(cfg.cavity_g0)},
        {"pattern", cfg.pattern_name},
        {"eta_mhz", units::to_mhz(cfg.cavity.drive_strength)},
    };
    j["dispersive"] = {
        {"g0_mhz", units::to_mhz(cfg.dispersive.g0)},
        {"delta0_mhz", units::to_mhz(cfg.dispersive.delta0)},
        {"include_decay", cfg.dispersive.include_decay},
    };
    j["scattering"] = {
        {"j_over_gamma", cfg.scattering.j_coupling},
        {"gamma_l_over_gamma", cfg.scattering.gamma_left},
        {"gamma_r_over_gamma", cfg.scattering.gamma_right},
    };
    j["disorder"] = {
        {"epsilon_mhz", units::to_mhz(cfg.disorder_strength)},
        {"samples", cfg.disorder_samples},
    };
    j["grids"] = {
        {"phi_over_pi",
         {{"min", cfg.phi_grid.min / pi}, {"max", cfg.phi_grid.max / pi},
          {"count", cfg.phi_grid.count}}},
        {"omega_l_mhz",
         {{"min", units::to_mhz(cfg.drive_grid.min)},
          {"max", units::to_mhz(cfg.drive_grid.max)},
          {"count", cfg.drive_grid.count}}},
        {"time_us",
         {{"min", cfg.time_grid.min}, {"max", cfg.time_grid.max},
          {"count", cfg.time_grid.count}}},
    };
    j["dynamics"] = {
        {"initial_site", cfg.initial_site + 1},
        {"measure_site", cfg.measure_site + 1},
    };
    j["circuit"] = {
        {"l_g_nh", cfg.coupler.l_g},
        {"l_0_nh", cfg.coupler.l_0},
        {"l_j_nh", cfg.coupler.l_j},
        {"qubit_freq_ghz", cfg.coupler.qubit_freq / units::ghz(1.0)},
        {"t0_mhz", units::to_mhz(cfg.circuit_t0)},
        {"resonator",
         {{"lt_g_nh", cfg.resonator.lt_g},
          {"lt_0_nh", cfg.resonator.lt_0},
          {"l_c_nh", cfg.resonator.l_c},
          {"freq_ghz", cfg.resonator.cavity_freq / units::ghz(1.0)},
          {"delta_t_over_pi", cfg.resonator.delta_t / pi}}},
    };
    return j;
}

} // namespace tcqed::cli
