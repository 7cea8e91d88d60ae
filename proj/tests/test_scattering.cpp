#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "tcqed/numerics.hpp"
#include "tcqed/scattering.hpp"
#include "tcqed/units.hpp"

using namespace tcqed;
using complexd = std::complex<double>;

namespace {
constexpr double pi = std::numbers::pi;

ScatteringParams paper_rates(double j_coupling) {
    ScatteringParams sp;
    sp.j_coupling = j_coupling;
    sp.gamma_left = 0.15;
    sp.gamma_right = 5e-4;
    sp.gamma_wg = 1.0;
    return sp;
}
} // namespace

TEST_CASE("transmission amplitude: resonance blocking and far detuning") {
    const auto sp = paper_rates(0.0);
    // Direct evaluation: t(0) = gamma_L / (gamma_L + Gamma_L) at J = 0.
    const double expected = 0.15 / 1.15;
    CHECK(std::abs(transmission_amplitude(0.0, sp) - complexd(expected, 0.0)) < 1e-14);
    CHECK(std::norm(transmission_amplitude(0.0, sp)) ==
          doctest::Approx(expected * expected).epsilon(1e-12));

    // Far-detuned photons pass.
    CHECK(std::abs(transmission_amplitude(1e6, sp) - complexd(1.0, 0.0)) < 1e-5);
    CHECK(std::abs(transmission_amplitude(-1e6, sp) - complexd(1.0, 0.0)) < 1e-5);

    // Edge-edge coupling opens a window at resonance.
    const auto open = paper_rates(0.035);
    CHECK(std::norm(transmission_amplitude(0.0, open)) > 10.0 * expected * expected);
}

TEST_CASE("susceptibility forms agree and round trip") {
    const auto sp = paper_rates(0.035);
    const auto grid = linspace(-5.0, 5.0, 2001);
    for (int i = 0; i < grid.size(); ++i) {
        const auto t = transmission_amplitude(grid[i], sp);
        const auto chi = susceptibility(t);
        CHECK(std::abs(chi - susceptibility_closed_form(grid[i], sp)) < 1e-12);
        CHECK(std::abs(t - 1.0 / (1.0 - complexd(0.0, 1.0) * chi)) < 1e-12);
    }

    // At J = 0 the resonant susceptibility is +i Gamma_L / gamma_L (checked
    // against the closed form and via the round trip above).
    const auto closed = paper_rates(0.0);
    const auto chi0 = susceptibility_closed_form(0.0, closed);
    CHECK(chi0.real() == doctest::Approx(0.0));
    CHECK(chi0.imag() == doctest::Approx(1.0 / 0.15).epsilon(1e-6));

    // No waveguide coupling means no response.
    ScatteringParams uncoupled = paper_rates(0.035);
    uncoupled.gamma_wg = 0.0;
    const auto grid2 = linspace(-2.0, 2.0, 101);
    for (int i = 0; i < grid2.size(); ++i) {
        CHECK(std::abs(susceptibility_closed_form(grid2[i], uncoupled)) == 0.0);
        // num == den; only the complex division rounds.
        CHECK(std::abs(transmission_amplitude(grid2[i], uncoupled) - 1.0) < 1e-15);
    }

    CHECK_THROWS_AS(susceptibility(complexd(0.0, 0.0)), singularity_error);
}

TEST_CASE("pole decomposition reconstructs the susceptibility") {
    for (double j : {0.0, 0.035, 0.075}) {
        const auto sp = paper_rates(j);
        const auto poles = decompose_poles(sp);
        CHECK(poles.poles[0].imag() < 0.0);
        CHECK(poles.poles[1].imag() < 0.0);

        const auto grid = linspace(-10.0, 10.0, 10001);
        double worst = 0.0;
        for (int i = 0; i < grid.size(); ++i) {
            const complexd rebuilt =
                poles.residues[0] / (grid[i] - poles.poles[0]) +
                poles.residues[1] / (grid[i] - poles.poles[1]);
            worst = std::max(worst,
                             std::abs(rebuilt - susceptibility_closed_form(grid[i], sp)));
        }
        CHECK(worst < 1e-10);
    }

    // Interference regime: opposite-sign components.
    const auto inter = decompose_poles(paper_rates(0.035));
    CHECK(inter.peak_signs[0] * inter.peak_signs[1] == -1);

    // Splitting regime: two positive components roughly 2J apart.
    const auto split = decompose_poles(paper_rates(0.075));
    CHECK(split.peak_signs[0] == 1);
    CHECK(split.peak_signs[1] == 1);
    CHECK(std::abs(split.peak_positions[0] - split.peak_positions[1]) ==
          doctest::Approx(2.0 * 0.075).epsilon(0.15));

    // J = 0: the whole weight sits on the left-edge pole at -i gamma_L/2.
    const auto bare = decompose_poles(paper_rates(0.0));
    const int left = std::abs(bare.poles[0] + complexd(0.0, 0.075)) < 1e-12 ? 0 : 1;
    CHECK(std::abs(bare.poles[left] - complexd(0.0, -0.075)) < 1e-12);
    CHECK(std::abs(bare.residues[1 - left]) < 1e-12);
    CHECK(std::abs(bare.residues[left] - complexd(-0.5, 0.0)) < 1e-12);

    // Exceptional point: poles collide at 4 J^2 = (gamma_L - gamma_R)^2/4.
    auto degenerate = paper_rates(0.25 * (0.15 - 5e-4));
    CHECK_THROWS_AS(decompose_poles(degenerate), singularity_error);
}

TEST_CASE("transparency classification") {
    const auto none = classify_transparency(paper_rates(0.0));
    CHECK(none.cls == TransparencyClass::None);

    const auto inter = classify_transparency(paper_rates(0.035));
    CHECK(inter.cls == TransparencyClass::Interference);
    CHECK(inter.component_peak_distance < inter.two_j);

    const auto split = classify_transparency(paper_rates(0.075));
    CHECK(split.cls == TransparencyClass::Splitting);
    CHECK(split.component_peak_distance == doctest::Approx(0.13).epsilon(0.02));
    CHECK(split.dip_distance > 0.0);
}

TEST_CASE("|t| <= 1 and even symmetry for nonnegative rates") {
    DeterministicRng rng(777);
    for (int trial = 0; trial < 60; ++trial) {
        ScatteringParams sp;
        sp.j_coupling = 0.3 * rng.uniform();
        sp.gamma_left = 0.6 * rng.uniform();
        sp.gamma_right = 0.1 * rng.uniform();
        sp.gamma_wg = 0.05 + 2.0 * rng.uniform();
        const auto grid = linspace(0.0, 6.0 * sp.gamma_wg, 301);
        for (int i = 0; i < grid.size(); ++i) {
            const auto plus = transmission_amplitude(grid[i], sp);
            const auto minus = transmission_amplitude(-grid[i], sp);
            CHECK(std::abs(plus) <= 1.0 + 1e-12);
            // |t| is even in the detuning: the polynomial coefficients are
            // real, so t(-D) is the conjugate-coefficient mirror of t(D).
            CHECK(std::abs(plus) == doctest::Approx(std::abs(minus)).epsilon(1e-13));
        }
    }
}

TEST_CASE("superatom reduction from the full model") {
    const auto array = ArrayParams::uniform(10, units::ghz(6.0), units::mhz(100.0),
                                            0.1 * pi);
    DispersiveParams disp;
    disp.g0 = units::mhz(5.0);
    disp.delta0 = units::mhz(50.0);

    const auto sp = superatom_from_system(array, disp, units::mhz(0.15),
                                          units::mhz(5e-4), units::mhz(1.0));
    CHECK(units::to_mhz(sp.j_coupling) == doctest::Approx(0.48).epsilon(0.01));
    CHECK(sp.j_coupling ==
          doctest::Approx(std::cos(0.1 * pi) * disp.g0 * disp.g0 / disp.delta0));
    // g_L = g_R = sqrt(cos phi) g0 makes the probe offset equal J here.
    CHECK(sp.probe_offset == doctest::Approx(sp.j_coupling));

    const auto scaled = sp.normalized();
    CHECK(scaled.gamma_wg == 1.0);
    CHECK(scaled.j_coupling == doctest::Approx(sp.j_coupling / sp.gamma_wg));
    CHECK(scaled.gamma_left == doctest::Approx(0.15).epsilon(1e-12));

    // cos(pi/2) -> 0: the coupling closes at the transition.
    ArrayParams near_critical = array;
    near_critical.phi = 0.499999 * pi;
    CHECK(std::abs(superatom_from_system(near_critical, disp, 1.0, 1.0, 1.0).j_coupling) <
          units::mhz(0.01));

    ArrayParams trivial_phase = array;
    trivial_phase.phi = 0.7 * pi;
    CHECK_THROWS_AS(superatom_from_system(trivial_phase, disp, 1.0, 1.0, 1.0),
                    unsupported_regime_error);
}
