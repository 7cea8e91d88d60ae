// spectroscopy.hpp — steady-state reflection/transmission of the driven
// cavity-array system in the low-excitation (linearized) limit, sweep maps,
// seeded disorder samples, and Rabi-splitting peak extraction.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "tcqed/lattice.hpp"

namespace tcqed {

struct CavityParams {
    double cavity_freq{0.0};          // omega_c [rad/us]
    double kappa{0.0};                // cavity decay [rad/us]
    Eigen::VectorXd coupling_vector;  // g per site, length 2N [rad/us]
    double drive_freq{0.0};           // omega_l [rad/us]
    double drive_strength{0.0};       // eta [rad/us]; ignored by the
                                      // linearized spectra, used by the
                                      // master-equation oracle

    static CavityParams homogeneous(int n_cells, double cavity_freq,
                                    double kappa, double g0,
                                    double drive_freq = 0.0,
                                    double drive_strength = 0.0);
    void validate(int n_sites) const;
};

// Cavity-qubit coupling patterns (unit entries, scaled by g0).
Eigen::VectorXd coupling_pattern_homogeneous(int n_cells);
// The 8-qubit pattern (-1, 1, 1, 1, -1, 1, 1, 1); requires n_cells = 4.
Eigen::VectorXd coupling_pattern_alternating_sign_8();

struct ReflectionPoint {
    double reflection{0.0};    // R in [0, 1]
    double transmission{0.0};  // T = 1 - R
};

// Steady-state reflection of a weak probe at cav.drive_freq:
//   R = 1 - | (kappa/2) / (kappa/2 + i Dc - i g^T B^{-1} g) |^2,
// with B = Dq I + D + diag(eps) - i Gamma/2, Dc = omega_c - omega_l and
// Dq = omega_0 - omega_l.  Solved by dense LU; independent of the drive
// strength by construction.  Throws singularity_error when B is numerically
// singular (a real resonance with zero decays).
ReflectionPoint steady_state_reflection(const ArrayParams& array,
                                        const CavityParams& cavity);

struct SpectralMap {
    Eigen::VectorXd phi_grid;      // rows
    Eigen::VectorXd drive_grid;    // columns [rad/us]
    Eigen::MatrixXd reflection;    // R(phi, omega_l)
};

// Evaluates steady_state_reflection over a (phi, drive) grid.  Rows follow
// phi_grid, columns drive_grid; grid points are independent, so evaluation
// parallelizes over `jobs` threads with identical output for any job count.
SpectralMap reflection_map(const ArrayParams& array_template,
                           const CavityParams& cavity_template,
                           const Eigen::VectorXd& phi_grid,
                           const Eigen::VectorXd& drive_grid, int jobs = 1);

// Eigenmode energies versus phi for the sweep overlay; row per phi, column
// per mode, ascending.
Eigen::MatrixXd eigenenergies_vs_phi(const ArrayParams& array_template,
                                     const Eigen::VectorXd& phi_grid);

// Copy of `array` with frequency offsets drawn i.i.d. uniform on
// [-strength, strength) from a deterministic seeded generator.
ArrayParams disorder_sample(const ArrayParams& array, double strength,
                            std::uint64_t seed);

struct RabiPeaks {
    std::vector<double> positions;   // refined peak drive frequencies [rad/us]
    double splitting{0.0};           // distance of the two dominant peaks
    bool resolvable{false};          // two distinct peaks found in the data
    bool resolvable_analytic{false}; // 2 sqrt(2 cos phi) g0 > (kappa+gamma)/2
};

// Locates the transmission peaks of a sampled spectrum T(omega_l) on a
// uniform grid straddling omega_0, refines them parabolically, and reports
// the splitting of the two dominant ones.  phi/g0/kappa/gamma feed the
// analytic resolvability condition.
RabiPeaks find_rabi_peaks(const Eigen::VectorXd& drive_grid,
                          const Eigen::VectorXd& transmission, double phi,
                          double g0, double kappa, double gamma);

} // namespace tcqed
