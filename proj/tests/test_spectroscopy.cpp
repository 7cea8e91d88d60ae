#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "tcqed/numerics.hpp"
#include "tcqed/spectroscopy.hpp"
#include "tcqed/units.hpp"

using namespace tcqed;

namespace {
constexpr double pi = std::numbers::pi;
const double omega0 = units::ghz(6.0);
const double t0 = units::mhz(100.0);
const double g0 = units::mhz(5.0);
const double kappa = units::mhz(10.0);
const double gamma0 = units::mhz(0.02);
} // namespace

TEST_CASE("bare cavity on resonance reflects nothing") {
    const auto array = ArrayParams::uniform(2, omega0, t0, 0.3 * pi, gamma0);
    CavityParams cavity;
    cavity.cavity_freq = omega0;
    cavity.kappa = kappa;
    cavity.coupling_vector = Eigen::VectorXd::Zero(4);
    cavity.drive_freq = omega0;
    const auto point = steady_state_reflection(array, cavity);
    CHECK(std::abs(point.reflection) < 1e-12);
    CHECK(point.transmission == doctest::Approx(1.0));
}

TEST_CASE("signed 8-qubit pattern shows edge and bulk features") {
    const auto array = ArrayParams::uniform(4, omega0, t0, 0.25 * pi, gamma0);
    CavityParams cavity;
    cavity.cavity_freq = omega0;
    cavity.kappa = kappa;
    cavity.coupling_vector = g0 * coupling_pattern_alternating_sign_8();

    auto reflection_at = [&](double omega_l) {
        CavityParams cav = cavity;
        cav.drive_freq = omega_l;
        return steady_state_reflection(array, cav).reflection;
    };

    // Edge resonance blocks the cavity at omega_0.
    CHECK(reflection_at(omega0) > 0.5);

    // A bulk feature sits inside the upper band [t2 - t1, t1 + t2].
    const auto [t1, t2] = couplings_from_phi(t0, 0.25 * pi);
    const auto grid = linspace(omega0 + (t2 - t1) - units::mhz(5.0),
                               omega0 + (t1 + t2) + units::mhz(5.0), 801);
    Eigen::VectorXd curve(grid.size());
    for (int i = 0; i < grid.size(); ++i) curve[i] = reflection_at(grid[i]);
    CHECK(local_maxima(curve).size() >= 1);

    // At the transition point the mid-gap feature is gone.
    ArrayParams critical = array;
    critical.phi = 0.5 * pi;
    CavityParams cav = cavity;
    cav.drive_freq = omega0;
    const double r_critical = steady_state_reflection(critical, cav).reflection;
    CHECK(r_critical < 0.5 * reflection_at(omega0));

    // Homogeneous couplings still light up the even-parity upper-band modes.
    CavityParams uniform = cavity;
    uniform.coupling_vector = g0 * coupling_pattern_homogeneous(4);
    Eigen::VectorXd upper(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        uniform.drive_freq = grid[i];
        upper[i] = steady_state_reflection(array, uniform).reflection;
    }
    CHECK(local_maxima(upper).size() >= 1);
}

TEST_CASE("reflection stays within [0, 1] across a map") {
    const auto array = ArrayParams::uniform(4, omega0, t0, 0.25 * pi, gamma0);
    CavityParams cavity;
    cavity.cavity_freq = omega0;
    cavity.kappa = kappa;
    cavity.coupling_vector = g0 * coupling_pattern_alternating_sign_8();

    const auto phis = linspace(0.0, pi, 21);
    const auto drives = linspace(omega0 - units::mhz(250.0),
                                 omega0 + units::mhz(250.0), 41);
    const auto map = reflection_map(array, cavity, phis, drives, 4);
    CHECK(map.reflection.minCoeff() > -1e-9);
    CHECK(map.reflection.maxCoeff() < 1.0 + 1e-9);

    // Deterministic and independent of the job count.
    const auto serial = reflection_map(array, cavity, phis, drives, 1);
    CHECK((map.reflection - serial.reflection).cwiseAbs().maxCoeff() == 0.0);

    const auto energies = eigenenergies_vs_phi(array, phis);
    CHECK(energies.rows() == phis.size());
    CHECK(energies.cols() == array.n_sites());
}

TEST_CASE("zero qubit decay at a real resonance is singular") {
    const auto array = ArrayParams::uniform(1, omega0, t0, 0.25 * pi, 0.0);
    const auto [t1, t2] = couplings_from_phi(t0, 0.25 * pi);
    CavityParams cavity;
    cavity.cavity_freq = omega0;
    cavity.kappa = kappa;
    cavity.coupling_vector = Eigen::VectorXd::Constant(2, g0);
    cavity.drive_freq = omega0 + t1;  // exactly on the dimer eigenfrequency
    CHECK_THROWS_AS(steady_state_reflection(array, cavity), singularity_error);
}

TEST_CASE("disorder samples are seeded, bounded, and uniform") {
    const auto array = ArrayParams::uniform(10, omega0, t0, 0.2 * pi, gamma0);
    const double strength = units::mhz(2.0);

    CHECK(disorder_sample(array, 0.0, 7).frequency_offsets.cwiseAbs().maxCoeff() == 0.0);

    const auto a = disorder_sample(array, strength, 42);
    const auto b = disorder_sample(array, strength, 42);
    const auto c = disorder_sample(array, strength, 43);
    CHECK((a.frequency_offsets - b.frequency_offsets).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.frequency_offsets - c.frequency_offsets).cwiseAbs().maxCoeff() > 0.0);
    CHECK(a.frequency_offsets.cwiseAbs().maxCoeff() <= strength);

    // Kolmogorov-Smirnov style bound over 10^4 pooled draws.
    const int n_seeds = 500;
    std::vector<double> pool;
    pool.reserve(n_seeds * array.n_sites());
    for (int seed = 0; seed < n_seeds; ++seed) {
        const auto sample = disorder_sample(array, strength, 1000 + seed);
        for (int i = 0; i < array.n_sites(); ++i)
            pool.push_back((sample.frequency_offsets[i] / strength + 1.0) / 2.0);
    }
    std::sort(pool.begin(), pool.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const double empirical = static_cast<double>(i + 1) / pool.size();
        ks = std::max(ks, std::abs(empirical - pool[i]));
    }
    CHECK(ks < 0.02);
}

TEST_CASE("Rabi peak extraction on a synthetic doublet") {
    const double center = omega0;
    const double split = units::mhz(12.0);
    const auto grid = linspace(center - units::mhz(30.0), center + units::mhz(30.0), 1201);
    Eigen::VectorXd curve(grid.size());
    auto lorentz = [](double x, double x0, double w) {
        return 1.0 / (1.0 + (x - x0) * (x - x0) / (w * w));
    };
    // Narrow peaks keep the mutual tail pull below the check tolerance.
    for (int i = 0; i < grid.size(); ++i)
        curve[i] = lorentz(grid[i], center - split / 2.0, units::mhz(0.5)) +
                   lorentz(grid[i], center + split / 2.0, units::mhz(0.5));

    const auto peaks = find_rabi_peaks(grid, curve, 0.2 * pi, g0, kappa, gamma0);
    REQUIRE(peaks.resolvable);
    CHECK(peaks.splitting == doctest::Approx(split).epsilon(1e-3));

    // Analytic resolvability: the edge pair couples at sqrt(2 cos phi) g0,
    // about 1.27 g0 at phi = 0.2 pi.
    CHECK(std::sqrt(2.0 * std::cos(0.2 * pi)) == doctest::Approx(1.27).epsilon(0.005));
    CHECK(peaks.resolvable_analytic);
    const auto hopeless =
        find_rabi_peaks(grid, curve, 0.2 * pi, g0, units::mhz(5000.0), gamma0);
    CHECK_FALSE(hopeless.resolvable_analytic);

    // A single peak is not resolvable.
    for (int i = 0; i < grid.size(); ++i)
        curve[i] = lorentz(grid[i], center, units::mhz(2.0));
    const auto single = find_rabi_peaks(grid, curve, 0.2 * pi, g0, kappa, gamma0);
    CHECK_FALSE(single.resolvable);
}

TEST_CASE("measured Rabi splitting matches the collective edge coupling") {
    const auto array = ArrayParams::uniform(18, omega0, t0, 0.2 * pi, gamma0);
    CavityParams cavity = CavityParams::homogeneous(18, omega0, kappa, g0);
    const auto grid = linspace(omega0 - units::mhz(25.0), omega0 + units::mhz(25.0), 1201);
    Eigen::VectorXd transmission(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        cavity.drive_freq = grid[i];
        transmission[i] = steady_state_reflection(array, cavity).transmission;
    }
    const auto peaks = find_rabi_peaks(grid, transmission, 0.2 * pi, g0, kappa, gamma0);
    REQUIRE(peaks.resolvable);
    const double predicted = 2.0 * std::sqrt(2.0 * std::cos(0.2 * pi)) * g0;
    CHECK(std::abs(peaks.splitting - predicted) / predicted < 0.10);
}

TEST_CASE("full solve agrees with the eigenmode reconstruction") {
    // With uniform decay the response matrix diagonalizes in the eigenmode
    // basis, so sum_nm g_n g_m [B^-1]_nm = sum_j xi_j^2 g0^2 / (Dq + w_j -
    // w0 - i gamma/2); odd-parity modes carry zero weight automatically.
    const auto array = ArrayParams::uniform(18, omega0, t0, pi / 5.0, gamma0);
    const auto modes = eigensystem(array);
    CavityParams cavity = CavityParams::homogeneous(18, omega0, kappa, g0);

    const auto grid = linspace(omega0 - units::mhz(240.0), omega0 + units::mhz(240.0), 81);
    for (int i = 0; i < grid.size(); ++i) {
        cavity.drive_freq = grid[i];
        const double r_full = steady_state_reflection(array, cavity).reflection;

        std::complex<double> response(0.0, 0.0);
        for (const auto& m : modes) {
            const double weight = m.coupling * g0;
            response += weight * weight /
                        std::complex<double>(omega0 - grid[i] + (m.energy - omega0),
                                             -gamma0 / 2.0);
        }
        const std::complex<double> denom =
            std::complex<double>(kappa / 2.0, omega0 - grid[i]) -
            std::complex<double>(0.0, 1.0) * response;
        const double r_modes = 1.0 - std::norm((kappa / 2.0) / denom);
        CHECK(std::abs(r_full - r_modes) < 1e-8);
    }
}
