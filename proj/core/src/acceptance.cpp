#include "tcqed/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "tcqed/circuit.hpp"
#include "tcqed/dispersive.hpp"
#include "tcqed/lattice.hpp"
#include "tcqed/numerics.hpp"
#include "tcqed/oracle.hpp"
#include "tcqed/scattering.hpp"
#include "tcqed/spectroscopy.hpp"
#include "tcqed/units.hpp"

namespace tcqed {

namespace {

constexpr double pi = std::numbers::pi;

struct Check {
    bool ok{true};
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
    void note(const std::string& what) {
        if (detail.tellp() > 0) detail << "; ";
        detail << what;
    }
};

CriterionResult finish(const std::string& name, Check& c) {
    return {name, c.ok, c.detail.str()};
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

// Desk-scale defaults shared by several criteria.
const double kOmega0 = units::ghz(6.0);
const double kT0 = units::mhz(100.0);
const double kG0 = units::mhz(5.0);
const double kKappa = units::mhz(10.0);
const double kGamma = units::mhz(0.02);

// ---- 1. coupling coefficients at N=18, phi=pi/5 ----------------------------
CriterionResult criterion_coupling_coefficients() {
    Check c;
    const auto array = ArrayParams::uniform(18, kOmega0, kT0, pi / 5.0, kGamma);
    const auto modes = eigensystem(array);

    double worst_odd = 0.0, sum_sq = 0.0;
    for (const auto& m : modes) {
        sum_sq += m.coupling * m.coupling;
        if (m.index % 2 == 1 && m.index != 18 && m.index != 19)
            worst_odd = std::max(worst_odd, std::abs(m.coupling));
    }
    const double xi18 = modes[17].coupling;
    const double xi19 = modes[18].coupling;
    const double target = std::sqrt(std::cos(pi / 5.0));

    c.require(worst_odd < 1e-8, "odd bulk |xi| up to " + fmt(worst_odd));
    c.require(std::abs(xi18 - target) < 1e-2,
              "xi_18 = " + fmt(xi18) + " vs sqrt(cos phi) = " + fmt(target));
    c.require(std::abs(xi18 - xi19) < 1e-6,
              "xi_18 - xi_19 = " + fmt(xi18 - xi19));
    c.require(std::abs(sum_sq - 36.0) < 1e-9,
              "sum xi^2 = " + fmt(sum_sq) + " vs 36");
    if (c.ok)
        c.note("xi_edge = " + fmt(xi18) + ", sum xi^2 - 36 = " + fmt(sum_sq - 36.0));
    return finish("coupling-coefficients", c);
}

// ---- 2. edge coupling law vs phi -------------------------------------------
CriterionResult criterion_edge_coupling_law() {
    Check c;
    const auto phis = linspace(0.0, 0.45 * pi, 46);

    double worst_large = 0.0;
    for (int i = 0; i < phis.size(); ++i) {
        const auto array = ArrayParams::uniform(78, kOmega0, kT0, phis[i]);
        const auto modes = eigensystem(array);
        const double target = std::sqrt(std::cos(phis[i]));
        worst_large = std::max(worst_large, std::abs(modes[77].coupling - target));
        worst_large = std::max(worst_large, std::abs(modes[78].coupling - target));
    }
    c.require(worst_large < 1e-3,
              "N=78 max|xi_edge - sqrt(cos phi)| = " + fmt(worst_large));

    double worst_even = 0.0, worst_odd = 0.0;
    int hybridized_points = 0;
    for (int i = 0; i < phis.size(); ++i) {
        const auto array = ArrayParams::uniform(6, kOmega0, kT0, phis[i]);
        const auto modes = eigensystem(array);
        const auto& lo = modes[5];
        const auto& hi = modes[6];
        const bool hybridized = lo.mode_class == ModeClass::EdgeHybridEven ||
                                lo.mode_class == ModeClass::EdgeHybridOdd;
        if (!hybridized) continue;
        ++hybridized_points;
        const double xi_even =
            (lo.mode_class == ModeClass::EdgeHybridEven) ? lo.coupling : hi.coupling;
        const double xi_odd =
            (lo.mode_class == ModeClass::EdgeHybridOdd) ? lo.coupling : hi.coupling;
        worst_even = std::max(
            worst_even, std::abs(xi_even - std::sqrt(2.0 * std::cos(phis[i]))));
        worst_odd = std::max(worst_odd, std::abs(xi_odd));
    }
    c.require(hybridized_points > 0, "no hybridized points found at N=6");
    c.require(worst_odd < 1e-6, "N=6 hybridized max|xi_odd| = " + fmt(worst_odd));
    c.require(worst_even < 1e-2,
              "N=6 hybridized max|xi_even - sqrt(2 cos phi)| = " + fmt(worst_even));
    if (c.ok)
        c.note("N=78 dev " + fmt(worst_large) + ", N=6 even dev " + fmt(worst_even) +
               " over " + std::to_string(hybridized_points) + " hybridized points");
    return finish("edge-coupling-law", c);
}

// ---- 3. vacuum Rabi splitting at N=18, phi=0.2 pi ---------------------------
CriterionResult criterion_rabi_splitting() {
    Check c;
    const double phi = 0.2 * pi;
    const auto array = ArrayParams::uniform(18, kOmega0, kT0, phi, kGamma);
    auto cavity = CavityParams::homogeneous(18, kOmega0, kKappa, kG0);

    const auto grid = linspace(kOmega0 - units::mhz(25.0),
                               kOmega0 + units::mhz(25.0), 1601);
    Eigen::VectorXd transmission(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        cavity.drive_freq = grid[i];
        transmission[i] = steady_state_reflection(array, cavity).transmission;
    }
    const auto peaks = find_rabi_peaks(grid, transmission, phi, kG0, kKappa, kGamma);
    const double predicted = 2.0 * std::sqrt(2.0 * std::cos(phi)) * kG0;

    c.require(peaks.resolvable, "no resolvable doublet found");
    c.require(peaks.resolvable_analytic, "analytic resolvability condition fails");
    if (peaks.resolvable) {
        const double rel = std::abs(peaks.splitting - predicted) / predicted;
        c.require(rel < 0.10, "splitting off by " + fmt(100.0 * rel) + "%");
        c.note("splitting " + fmt(units::to_mhz(peaks.splitting)) + " MHz vs 2*1.27*g0 = " +
               fmt(units::to_mhz(predicted)) + " MHz");
    }
    return finish("rabi-splitting", c);
}

// ---- 4. disorder robustness -------------------------------------------------
CriterionResult criterion_disorder_robustness() {
    Check c;
    const double phi = 0.2 * pi;
    const auto array = ArrayParams::uniform(18, kOmega0, kT0, phi, kGamma);
    auto cavity = CavityParams::homogeneous(18, kOmega0, kKappa, kG0);
    const auto grid = linspace(kOmega0 - units::mhz(25.0),
                               kOmega0 + units::mhz(25.0), 1201);

    auto transmission_curve = [&](const ArrayParams& a) {
        Eigen::VectorXd t(grid.size());
        CavityParams cav = cavity;
        for (int i = 0; i < grid.size(); ++i) {
            cav.drive_freq = grid[i];
            t[i] = steady_state_reflection(a, cav).transmission;
        }
        return t;
    };
    auto transmission_at_center = [&](const ArrayParams& a) {
        CavityParams cav = cavity;
        cav.drive_freq = kOmega0;
        return steady_state_reflection(a, cav).transmission;
    };

    const double t_clean = transmission_at_center(array);
    int resolvable = 0, transparent = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto sample = disorder_sample(array, units::mhz(2.0), seed);
        const auto curve = transmission_curve(sample);
        const auto peaks = find_rabi_peaks(grid, curve, phi, kG0, kKappa, kGamma);
        if (peaks.resolvable) ++resolvable;
        const double t_center = transmission_at_center(sample);
        if (t_center > std::max(1e-4, 10.0 * t_clean)) ++transparent;
    }
    c.require(resolvable >= 9,
              "Rabi doublet resolvable in only " + std::to_string(resolvable) + "/10");
    c.require(transparent >= 9,
              "central transparency seen in only " + std::to_string(transparent) + "/10");
    if (c.ok)
        c.note("resolvable " + std::to_string(resolvable) + "/10, transparency " +
               std::to_string(transparent) + "/10, clean T(omega_0) = " + fmt(t_clean));
    return finish("disorder-robustness", c);
}

// ---- 5. master-equation oracle vs the linearized spectra --------------------
CriterionResult criterion_oracle_equivalence() {
    Check c;
    TruncatedSystem sys;
    sys.array = ArrayParams::uniform(1, kOmega0, kT0, 0.25 * pi, kGamma);
    sys.cavity = CavityParams::homogeneous(1, kOmega0, kKappa, kG0);
    sys.cavity.drive_strength = kKappa / 100.0;
    sys.photon_cutoff = 2;

    const auto grid = linspace(kOmega0 - units::mhz(60.0),
                               kOmega0 + units::mhz(60.0), 41);
    double worst = 0.0, worst_half = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        sys.cavity.drive_freq = grid[i];
        const double r_oracle = lindblad_steady_state(sys).reflection;
        const double r_linear = steady_state_reflection(sys.array, sys.cavity).reflection;
        worst = std::max(worst, std::abs(r_oracle - r_linear));

        TruncatedSystem half = sys;
        half.cavity.drive_strength /= 2.0;
        worst_half = std::max(
            worst_half,
            std::abs(lindblad_steady_state(half, false).reflection - r_oracle));
    }
    c.require(worst < 1e-3, "max|R_linear - R_oracle| = " + fmt(worst));
    c.require(worst_half < 1e-4, "halving eta shifts R by " + fmt(worst_half));
    if (c.ok)
        c.note("max|R_linear - R_oracle| = " + fmt(worst) + ", eta/2 shift = " +
               fmt(worst_half));
    return finish("oracle-equivalence", c);
}

// ---- 6/7. edge-state Rabi period and bandgap influence ----------------------
double estimate_edge_coupling(int n_cells, double t0, double t_max, int n_pts) {
    const auto array = ArrayParams::uniform(n_cells, kOmega0, t0, 0.1 * pi);
    DispersiveParams disp;
    disp.g0 = kG0;
    disp.delta0 = kG0 / 0.1;
    const auto h = effective_hamiltonian_qubits(array, disp);
    const auto trace = evolve_excitation(h, 0, linspace(0.0, t_max, n_pts));
    return measure_oscillation_period(trace, 0).coupling;
}

CriterionResult criterion_edge_rabi_period() {
    Check c;
    const double j_formula = std::cos(0.1 * pi) * kG0 * kG0 / (kG0 / 0.1);

    const double j6 = estimate_edge_coupling(6, kT0, 2.6, 5201);
    const double period = pi / j6;
    c.require(std::abs(period - 1.04) / 1.04 < 0.05,
              "period " + fmt(period) + " us vs 1.04 us");
    c.require(std::abs(j6 - units::mhz(0.48)) / units::mhz(0.48) < 0.05,
              "J_est = " + fmt(units::to_mhz(j6)) + " 2pi MHz vs 0.48");

    const double j10 = estimate_edge_coupling(10, kT0, 2.6, 5201);
    const double j14 = estimate_edge_coupling(14, kT0, 2.6, 5201);
    const double spread =
        (std::max({j6, j10, j14}) - std::min({j6, j10, j14})) / std::min({j6, j10, j14});
    c.require(spread < 0.05, "J_est spread across N in {6,10,14} is " +
                                 fmt(100.0 * spread) + "%");
    if (c.ok)
        c.note("T = " + fmt(period) + " us, J_est = " + fmt(units::to_mhz(j6)) +
               " 2pi MHz (formula " + fmt(units::to_mhz(j_formula)) +
               "), size spread " + fmt(100.0 * spread) + "%");
    return finish("edge-rabi-period", c);
}

CriterionResult criterion_bandgap_influence() {
    Check c;
    const double j_formula = std::cos(0.1 * pi) * kG0 * kG0 / (kG0 / 0.1);
    const double j_small_gap = estimate_edge_coupling(6, units::mhz(10.0), 3.5, 7001);
    c.require(j_small_gap < j_formula,
              "J_est = " + fmt(units::to_mhz(j_small_gap)) +
                  " not below the formula value " + fmt(units::to_mhz(j_formula)));
    if (c.ok)
        c.note("J_est/J = " + fmt(j_small_gap / j_formula) + " at t0 = 2pi*10 MHz");
    return finish("bandgap-influence", c);
}

// ---- 8. waveguide scattering -------------------------------------------------
CriterionResult criterion_scattering() {
    Check c;
    ScatteringParams sp;
    sp.gamma_left = 0.15;
    sp.gamma_right = 5e-4;
    sp.gamma_wg = 1.0;

    sp.j_coupling = 0.0;
    const double t0_sq = std::norm(transmission_amplitude(0.0, sp));
    const double expected = (0.15 / 1.15) * (0.15 / 1.15);
    c.require(std::abs(t0_sq - expected) < 1e-10,
              "|t(0)|^2 at J=0 is " + fmt(t0_sq) + " vs (0.15/1.15)^2");

    sp.j_coupling = 0.035;
    const double t_window = std::norm(transmission_amplitude(0.0, sp));
    c.require(t_window > t0_sq, "no transparency window at J=0.035");
    const auto interference = classify_transparency(sp);
    c.require(interference.cls == TransparencyClass::Interference,
              "J=0.035 classified as " + std::string(to_string(interference.cls)));
    c.require(interference.component_peak_distance < 2.0 * sp.j_coupling,
              "component peak distance " + fmt(interference.component_peak_distance) +
                  " not below 2J = " + fmt(2.0 * sp.j_coupling));

    sp.j_coupling = 0.075;
    const auto splitting = classify_transparency(sp);
    c.require(splitting.cls == TransparencyClass::Splitting,
              "J=0.075 classified as " + std::string(to_string(splitting.cls)));
    const auto poles = decompose_poles(sp);
    c.require(poles.peak_signs[0] > 0 && poles.peak_signs[1] > 0,
              "J=0.075 peaks are not both positive");
    if (c.ok)
        c.note("|t(0)|^2 = " + fmt(t0_sq) + " -> " + fmt(t_window) +
               " with J=0.035; splitting-regime peak distance " +
               fmt(splitting.component_peak_distance) + " vs 2J = " + fmt(0.15));
    return finish("scattering-transparency", c);
}

// ---- 9. circuit parameter map ------------------------------------------------
CriterionResult criterion_circuit_map() {
    Check c;
    CouplerCircuit coupler;
    coupler.l_g = 0.25;
    coupler.l_0 = 0.566;
    coupler.l_j = 8.34;
    coupler.qubit_freq = kOmega0;

    double delta_min = pi, delta_max = 0.0;
    const auto phis = linspace(0.0, pi, 101);
    for (int i = 0; i < phis.size(); ++i) {
        const auto [t1, t2] = couplings_from_phi(kT0, phis[i]);
        for (double t : {t1, t2}) {
            const double d = delta_for_coupling(coupler, t, CouplingSign::Positive);
            delta_min = std::min(delta_min, d);
            delta_max = std::max(delta_max, d);
        }
    }
    c.require(delta_min >= 0.5 * pi - 1e-12 && delta_max <= 0.9 * pi,
              "delta range [" + fmt(delta_min / pi) + ", " + fmt(delta_max / pi) +
                  "] pi outside [0.5, 0.9] pi");

    double worst_roundtrip = 0.0;
    const auto deltas = linspace(0.5 * pi, 0.9 * pi, 81);
    for (int i = 0; i < deltas.size(); ++i) {
        const double back = delta_for_flux(coupler, flux_for_delta(coupler, deltas[i]));
        worst_roundtrip = std::max(worst_roundtrip, std::abs(back - deltas[i]));
    }
    c.require(worst_roundtrip < 1e-10,
              "flux round trip error " + fmt(worst_roundtrip));

    const double dg = frequency_shifts(kT0, kT0, kG0, kOmega0).coupling_shift;
    c.require(std::abs(units::to_mhz(dg) + 0.083) < 1e-3,
              "delta g = " + fmt(units::to_mhz(dg)) + " 2pi MHz vs -0.083");
    if (c.ok)
        c.note("delta in [" + fmt(delta_min / pi) + ", " + fmt(delta_max / pi) +
               "] pi, flux round trip " + fmt(worst_roundtrip) + ", delta g = " +
               fmt(units::to_mhz(dg)) + " 2pi MHz");
    return finish("circuit-map", c);
}

// ---- 10. property suites ------------------------------------------------------
CriterionResult criterion_property_suites() {
    Check c;

    // Chiral symmetry of the spectrum about omega_0.
    {
        const auto modes = eigensystem(ArrayParams::uniform(7, kOmega0, kT0, 0.3 * pi));
        double worst = 0.0;
        const int n = static_cast<int>(modes.size());
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::abs((modes[j].energy - kOmega0) +
                                             (modes[n - 1 - j].energy - kOmega0)));
        c.require(worst < 1e-9, "chiral symmetry violated by " + fmt(worst));
    }

    // Parseval: sum xi_j^2 = 2N, i.e. sum eps_j^2 = 1.
    for (int n_cells : {5, 12}) {
        const auto modes = eigensystem(ArrayParams::uniform(n_cells, kOmega0, kT0, 0.22 * pi));
        double sum_sq = 0.0;
        for (const auto& m : modes) sum_sq += m.coupling * m.coupling;
        c.require(std::abs(sum_sq - 2.0 * n_cells) < 1e-9,
                  "Parseval sum = " + fmt(sum_sq) + " at N = " + std::to_string(n_cells));
    }

    // Analytic vs numeric eigenvectors: bulk bands and both edge regimes.
    {
        const auto array = ArrayParams::uniform(10, kOmega0, kT0, 0.2 * pi);
        const auto modes = eigensystem(array);
        double worst = 1.0;
        for (int j = 1; j <= 20; ++j) {
            if (j == 10 || j == 11) continue;
            const auto km = momentum_for_mode(array, j);
            const auto analytic = analytic_bulk_state(array, km);
            worst = std::min(worst, std::abs(analytic.dot(modes[j - 1].amplitudes)));
        }
        c.require(worst > 1.0 - 1e-6, "bulk overlap down to " + fmt(worst));

        const auto [left, right] = analytic_edge_states(array);  // localized regime
        const int i_left = modes[9].mode_class == ModeClass::EdgeLeft ? 9 : 10;
        const double o_left = std::abs(left.dot(modes[i_left].amplitudes));
        const double o_right = std::abs(right.dot(modes[19 - i_left].amplitudes));
        c.require(std::min(o_left, o_right) > 1.0 - 1e-4,
                  "localized edge overlap down to " + fmt(std::min(o_left, o_right)));

        const auto hyb_array = ArrayParams::uniform(6, kOmega0, kT0, 0.25 * pi);
        const auto hyb_modes = eigensystem(hyb_array);
        const auto [hl, hr] = analytic_edge_states(hyb_array);
        const Eigen::VectorXd even = ((hl + hr) / std::sqrt(2.0)).eval();
        const Eigen::VectorXd odd = ((hl - hr) / std::sqrt(2.0)).eval();
        double o_hyb = 1.0;
        for (int j : {5, 6}) {
            const double o = std::max(std::abs(even.dot(hyb_modes[j].amplitudes)),
                                      std::abs(odd.dot(hyb_modes[j].amplitudes)));
            o_hyb = std::min(o_hyb, o);
        }
        c.require(o_hyb > 1.0 - 1e-4, "hybridized edge overlap down to " + fmt(o_hyb));
    }

    // |t| <= 1 on randomized nonnegative rates.
    {
        DeterministicRng rng(20240817);
        double worst = 0.0;
        for (int trial = 0; trial < 40; ++trial) {
            ScatteringParams sp;
            sp.j_coupling = 0.2 * rng.uniform();
            sp.gamma_left = 0.5 * rng.uniform();
            sp.gamma_right = 0.05 * rng.uniform();
            sp.gamma_wg = 0.1 + 2.0 * rng.uniform();
            const auto grid = linspace(-8.0 * sp.gamma_wg, 8.0 * sp.gamma_wg, 401);
            for (int i = 0; i < grid.size(); ++i)
                worst = std::max(worst,
                                 std::abs(transmission_amplitude(grid[i], sp)));
        }
        c.require(worst <= 1.0 + 1e-12, "max |t| = " + fmt(worst));
    }

    // chi <-> t round trip.
    {
        ScatteringParams sp;
        sp.j_coupling = 0.035;
        sp.gamma_left = 0.15;
        sp.gamma_right = 5e-4;
        sp.gamma_wg = 1.0;
        double worst = 0.0;
        const auto grid = linspace(-5.0, 5.0, 1001);
        for (int i = 0; i < grid.size(); ++i) {
            const auto t = transmission_amplitude(grid[i], sp);
            const auto chi = susceptibility(t);
            worst = std::max(worst,
                             std::abs(t - 1.0 / (1.0 - std::complex<double>(0, 1) * chi)));
            worst = std::max(worst,
                             std::abs(chi - susceptibility_closed_form(grid[i], sp)));
        }
        c.require(worst < 1e-12, "chi/t round trip error " + fmt(worst));
    }

    // Norm conservation (Hermitian) and monotone decay (non-Hermitian).
    {
        const auto array = ArrayParams::uniform(6, kOmega0, kT0, 0.1 * pi);
        DispersiveParams disp;
        disp.g0 = kG0;
        disp.delta0 = kG0 / 0.1;
        const auto grid = linspace(0.0, 1.5, 601);
        const auto trace = evolve_excitation(effective_hamiltonian_qubits(array, disp),
                                             0, grid);
        c.require((trace.norm.array() - 1.0).abs().maxCoeff() < 1e-9,
                  "Hermitian norm drifts by " +
                      fmt((trace.norm.array() - 1.0).abs().maxCoeff()));

        DispersiveParams lossy = disp;
        lossy.include_decay = true;
        lossy.kappa = kKappa;
        lossy.gamma = kGamma;
        const auto decaying =
            evolve_excitation(effective_hamiltonian_qubits(array, lossy), 0, grid);
        bool monotone = true;
        for (int i = 1; i < decaying.norm.size(); ++i)
            if (decaying.norm[i] > decaying.norm[i - 1] + 1e-12) monotone = false;
        c.require(monotone, "non-Hermitian norm is not non-increasing");
    }

    return finish("property-suites", c);
}

} // namespace

std::vector<CriterionResult> run_acceptance() {
    return {
        criterion_coupling_coefficients(),
        criterion_edge_coupling_law(),
        criterion_rabi_splitting(),
        criterion_disorder_robustness(),
        criterion_oracle_equivalence(),
        criterion_edge_rabi_period(),
        criterion_bandgap_influence(),
        criterion_scattering(),
        criterion_circuit_map(),
        criterion_property_suites(),
    };
}

bool run_acceptance_and_print(std::ostream& os) {
    bool all = true;
    for (const auto& r : run_acceptance()) {
        os << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) os << ": " << r.detail;
        os << '\n';
        all = all && r.passed;
    }
    os << (all ? "acceptance: all criteria passed\n"
               : "acceptance: FAILURES present\n");
    return all;
}

} // namespace tcqed
