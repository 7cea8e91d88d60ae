#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "tcqed/dispersive.hpp"
#include "tcqed/numerics.hpp"
#include "tcqed/oracle.hpp"
#include "tcqed/units.hpp"

using namespace tcqed;
using complexd = std::complex<double>;

namespace {
constexpr double pi = std::numbers::pi;
const double omega0 = units::ghz(6.0);
const double t0 = units::mhz(100.0);
const double g0 = units::mhz(5.0);
const double kappa = units::mhz(10.0);
const double gamma0 = units::mhz(0.02);

TruncatedSystem dimer_system() {
    TruncatedSystem sys;
    sys.array = ArrayParams::uniform(1, omega0, t0, 0.25 * pi, gamma0);
    sys.cavity = CavityParams::homogeneous(1, omega0, kappa, g0, omega0,
                                           kappa / 100.0);
    sys.photon_cutoff = 2;
    return sys;
}
} // namespace

TEST_CASE("bare driven cavity reaches the coherent steady state") {
    TruncatedSystem sys = dimer_system();
    sys.cavity.coupling_vector.setZero();
    const auto result = lindblad_steady_state(sys);
    // alpha = 2 eta / kappa on resonance, so R = 0 up to the photon-cutoff
    // truncation of the small coherent state.
    CHECK(std::abs(result.a_expectation -
                   complexd(2.0 * sys.cavity.drive_strength / kappa, 0.0)) < 1e-6);
    CHECK(std::abs(result.reflection) < 1e-5);
}

TEST_CASE("oracle matches the linearized reflection across the dimer doublet") {
    TruncatedSystem sys = dimer_system();
    const auto grid = linspace(omega0 - units::mhz(60.0), omega0 + units::mhz(60.0), 9);
    for (int i = 0; i < grid.size(); ++i) {
        sys.cavity.drive_freq = grid[i];
        const double r_oracle = lindblad_steady_state(sys).reflection;
        const double r_linear =
            steady_state_reflection(sys.array, sys.cavity).reflection;
        CHECK(std::abs(r_oracle - r_linear) < 1e-3);
    }
}

TEST_CASE("drive ceiling enforces the low-excitation limit") {
    TruncatedSystem sys = dimer_system();
    sys.cavity.drive_strength = kappa / 10.0;
    CHECK_THROWS_AS(lindblad_steady_state(sys), std::domain_error);
}

TEST_CASE("undriven closed system reduces to single-excitation dynamics") {
    TruncatedSystem sys = dimer_system();
    sys.array.qubit_decays.setZero();
    sys.cavity.kappa = 0.0;
    sys.cavity.drive_strength = 0.0;
    sys.cavity.cavity_freq = omega0 - units::mhz(100.0);
    sys.cavity.drive_freq = sys.cavity.cavity_freq;  // rotating frame at omega_c
    sys.photon_cutoff = 1;

    const auto times = linspace(0.0, 0.5, 251);
    const auto trace = lindblad_evolve(sys, single_excitation_density_matrix(sys, 0),
                                       times);

    // Independent route: the closed single-excitation block
    // {photon, A1, B1} in the same rotating frame.
    const auto [t1, t2] = couplings_from_phi(t0, 0.25 * pi);
    const double dq = omega0 - sys.cavity.drive_freq;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    h(0, 0) = 0.0;
    h(1, 1) = dq;
    h(2, 2) = dq;
    h(0, 1) = h(1, 0) = g0;
    h(0, 2) = h(2, 0) = g0;
    h(1, 2) = h(2, 1) = t1;
    const auto reference = evolve_excitation(h, 1, times);

    for (int i = 0; i < times.size(); ++i) {
        CHECK(trace.qubit_populations(i, 0) ==
              doctest::Approx(reference.populations(i, 1)).epsilon(1e-8));
        CHECK(trace.qubit_populations(i, 1) ==
              doctest::Approx(reference.populations(i, 2)).epsilon(1e-8));
        CHECK(trace.photon_number[i] ==
              doctest::Approx(reference.populations(i, 0)).epsilon(1e-8));
        CHECK(trace.trace_real[i] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("two-cell closed system matches its single-excitation block") {
    TruncatedSystem sys;
    sys.array = ArrayParams::uniform(2, omega0, t0, 0.3 * pi);
    sys.cavity = CavityParams::homogeneous(2, omega0, 0.0, g0);
    sys.cavity.cavity_freq = omega0 - units::mhz(80.0);
    sys.cavity.drive_freq = sys.cavity.cavity_freq;
    sys.photon_cutoff = 1;

    const auto times = linspace(0.0, 0.2, 101);
    const auto trace = lindblad_evolve(sys, single_excitation_density_matrix(sys, 2),
                                       times);

    // Single-excitation block {photon, A1, B1, A2, B2} in the same frame.
    const auto [t1, t2] = couplings_from_phi(t0, 0.3 * pi);
    const double dq = omega0 - sys.cavity.drive_freq;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(5, 5);
    for (int q = 1; q <= 4; ++q) {
        h(q, q) = dq;
        h(0, q) = h(q, 0) = g0;
    }
    h(1, 2) = h(2, 1) = t1;
    h(2, 3) = h(3, 2) = t2;
    h(3, 4) = h(4, 3) = t1;
    const auto reference = evolve_excitation(h, 3, times);

    for (int i = 0; i < times.size(); ++i) {
        for (int q = 0; q < 4; ++q)
            CHECK(trace.qubit_populations(i, q) ==
                  doctest::Approx(reference.populations(i, q + 1)).epsilon(1e-8));
        CHECK(trace.photon_number[i] ==
              doctest::Approx(reference.populations(i, 0)).epsilon(1e-8));
    }
}

TEST_CASE("dispersive effective model tracks the oracle at small g/Delta") {
    // Full cavity + dimer evolution vs the photon-eliminated effective
    // Hamiltonian; agreement degrades as O((g0/Delta0)^2).
    const double ratio = 0.05;
    const double delta0 = g0 / ratio;

    TruncatedSystem sys = dimer_system();
    sys.array.qubit_decays.setZero();
    sys.cavity.kappa = 0.0;
    sys.cavity.drive_strength = 0.0;
    sys.cavity.cavity_freq = omega0 - delta0;
    sys.cavity.drive_freq = sys.cavity.cavity_freq;
    sys.photon_cutoff = 1;

    const auto times = linspace(0.0, 0.12, 1201);
    const auto oracle_trace =
        lindblad_evolve(sys, single_excitation_density_matrix(sys, 0), times);

    DispersiveParams disp;
    disp.g0 = g0;
    disp.delta0 = delta0;
    const auto effective = evolve_excitation(
        effective_hamiltonian_qubits(sys.array, disp), 0, times);

    // Compare the population-transfer oscillation period site A1 -> B1.
    DynamicsTrace wrapped;
    wrapped.times = times;
    wrapped.populations = oracle_trace.qubit_populations;
    wrapped.norm = oracle_trace.qubit_populations.rowwise().sum();
    const auto osc_oracle = measure_oscillation_period(wrapped, 0);
    const auto osc_effective = measure_oscillation_period(effective, 0);
    CHECK(std::abs(osc_oracle.coupling - osc_effective.coupling) /
              osc_oracle.coupling <
          0.02);
}

TEST_CASE("density matrix stays physical through a decaying evolution") {
    TruncatedSystem sys = dimer_system();
    sys.cavity.drive_strength = 0.0;
    sys.photon_cutoff = 1;
    const auto times = linspace(0.0, 1.0, 101);
    const auto trace = lindblad_evolve(sys, single_excitation_density_matrix(sys, 1),
                                       times);
    for (int i = 0; i < times.size(); ++i) {
        CHECK(trace.trace_real[i] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(trace.min_eigenvalue[i] > -1e-9);
        if (i > 0) {
            const double before = trace.qubit_populations.row(i - 1).sum() +
                                  trace.photon_number[i - 1];
            const double after = trace.qubit_populations.row(i).sum() +
                                 trace.photon_number[i];
            CHECK(after <= before + 1e-9);  // excitation only decays
        }
    }
}

TEST_CASE("system validation limits") {
    TruncatedSystem sys = dimer_system();
    CHECK(sys.dimension() == 12);

    sys.array = ArrayParams::uniform(2, omega0, t0, 0.25 * pi, gamma0);
    sys.cavity = CavityParams::homogeneous(2, omega0, kappa, g0, omega0, kappa / 100.0);
    sys.photon_cutoff = 2;
    CHECK(sys.dimension() == 48);
    CHECK_NOTHROW(sys.validate());

    sys.photon_cutoff = 3;
    CHECK_THROWS_AS(sys.validate(), std::invalid_argument);

    TruncatedSystem big;
    big.array = ArrayParams::uniform(3, omega0, t0, 0.25 * pi, gamma0);
    big.cavity = CavityParams::homogeneous(3, omega0, kappa, g0, omega0, kappa / 100.0);
    big.photon_cutoff = 1;
    CHECK_THROWS_AS(big.validate(), unsupported_regime_error);
}
