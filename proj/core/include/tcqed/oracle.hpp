// oracle.hpp — brute-force Lindblad master-equation solver for tiny
// cavity + array systems (N <= 2 unit cells, small photon cutoff).  This is
// the validation route for the linearized steady-state spectra and the
// dispersive approximations; it is deliberately limited to Hilbert
// dimensions where exact dense solves are trivial.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "tcqed/lattice.hpp"
#include "tcqed/spectroscopy.hpp"

namespace tcqed {

struct TruncatedSystem {
    ArrayParams array;    // n_cells <= 2
    CavityParams cavity;  // drive_strength is the eta of the master equation
    int photon_cutoff{1};

    // Hilbert dimension (photon_cutoff + 1) * 2^(2N); capped at 48.
    int dimension() const;
    void validate() const;
};

struct SteadyStateResult {
    std::complex<double> a_expectation;  // <a> in the drive rotating frame
    double reflection{0.0};              // R = 1 - |kappa <a> / (2 eta)|^2
    double transmission{0.0};
};

// Stationary state of the driven dissipative system by a direct dense solve
// of the vectorized Liouvillian with the trace constraint replacing one row.
// The reflection uses the same normalization as the linearized formula: the
// empty cavity driven on resonance gives <a> = 2 eta / kappa and R = 0.
// When check_cutoff is set, the solve is repeated at twice the photon cutoff
// and a reflection shift above 1e-4 raises convergence_error.
SteadyStateResult lindblad_steady_state(const TruncatedSystem& sys,
                                        bool check_cutoff = true);

struct LindbladTrace {
    Eigen::VectorXd times;              // [us]
    Eigen::MatrixXd qubit_populations; // time x 2N, <sigma^+ sigma^->
    Eigen::VectorXd photon_number;      // <a^dagger a>
    Eigen::VectorXd trace_real;         // Re tr(rho); stays 1
    Eigen::VectorXd min_eigenvalue;     // physicality monitor
};

// Integrates rho(t) on the given grid by a scaled Taylor expansion of the
// exact linear propagator exp(L dt) applied term by term (the generator is
// time independent, so no step-size control is needed).  The initial state
// is a density matrix in the kron(photon, qubits) ordering of
// initial_density_matrix / single_excitation_density_matrix.
LindbladTrace lindblad_evolve(const TruncatedSystem& sys,
                              const Eigen::MatrixXcd& rho0,
                              const Eigen::VectorXd& t_grid);

// |vacuum, all qubits down><...| for the system.
Eigen::MatrixXcd ground_state_density_matrix(const TruncatedSystem& sys);

// Photon vacuum with one qubit excited at zero-based `site`.
Eigen::MatrixXcd single_excitation_density_matrix(const TruncatedSystem& sys,
                                                  int site);

} // namespace tcqed
