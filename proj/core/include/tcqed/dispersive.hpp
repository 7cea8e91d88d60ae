// dispersive.hpp — far-detuned (dispersive) effective Hamiltonians of the
// cavity-coupled array, cavity-mediated eigenmode couplings J_jk, edge-edge
// excitation dynamics, and oscillation-period extraction.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "tcqed/lattice.hpp"

namespace tcqed {

struct DispersiveParams {
    double g0{0.0};           // homogeneous cavity-qubit coupling [rad/us]
    double delta0{0.0};       // Delta_0 = omega_0 - omega_c [rad/us]
    bool include_decay{false};
    double kappa{0.0};        // cavity decay feeding the Purcell rate [rad/us]
    double gamma{0.0};        // uniform bare qubit decay [rad/us]

    double ratio() const { return g0 / delta0; }
    // Purcell rate inherited from the lossy cavity: kappa (g0/Delta_0)^2.
    double purcell_rate() const { return kappa * ratio() * ratio(); }
    // |g0/Delta_0| must stay below 1; above 0.2 the expansion is strained.
    void validate() const;
    bool strained() const { return std::abs(ratio()) > 0.2; }
};

// Effective qubit-basis Hamiltonian in the frame rotating at omega_c:
//   H = Delta_0 I + (g0^2/Delta_0) * ones + D + diag(eps)
//       [- i (gamma + kappa g0^2/Delta_0^2)/2 I  when decay is on].
// Throws singularity_error at Delta_0 = 0.
Eigen::MatrixXcd effective_hamiltonian_qubits(const ArrayParams& array,
                                              const DispersiveParams& disp);

// Cavity-mediated coupling between eigenmodes j and k:
//   J_jk = (xi_j xi_k g0^2 / 2)(1/Delta_j + 1/Delta_k).
double cavity_mediated_coupling(const EigenMode& mode_j, const EigenMode& mode_k,
                                const DispersiveParams& disp,
                                double cavity_freq);

// Effective eigenmode-basis Hamiltonian: diagonal Delta_j + xi_j^2 g0^2 /
// Delta_j, off-diagonal J_jk.  Hermitian (decay is not propagated in this
// basis).  Throws singularity_error naming any mode resonant with the cavity.
Eigen::MatrixXcd effective_hamiltonian_modes(const ArrayParams& array,
                                             const DispersiveParams& disp);

// Size-independent edge-edge coupling J = cos(phi) g0^2/Delta_0, valid in
// the topological phase with negligible edge hybridization.
double edge_state_coupling(const ArrayParams& array, const DispersiveParams& disp);

enum class Propagator { Spectral, GeneralEigen, ScaledTaylor };
const char* to_string(Propagator p);

struct DynamicsTrace {
    Eigen::VectorXd times;        // [us]
    Eigen::MatrixXd populations;  // time x site, |<n|psi(t)>|^2
    Eigen::VectorXd norm;         // total excitation vs time
    Propagator propagator{Propagator::Spectral};
};

// Populations from |psi(t)> = exp(-i H t)|initial_site>.  Hermitian H uses
// the spectral decomposition; non-Hermitian H uses a general
// eigendecomposition, falling back to a scaled Taylor propagator when the
// eigenvector matrix is ill-conditioned (condition number > 1e8).
// `initial_site` is a zero-based site row of H.
DynamicsTrace evolve_excitation(const Eigen::MatrixXcd& hamiltonian,
                                int initial_site,
                                const Eigen::VectorXd& t_grid);

struct OscillationEstimate {
    double period{0.0};    // first-revival period T [us]
    double coupling{0.0};  // J_est = pi / T [rad/us]
};

// Period of the population revival at `site`: the trace must first drain the
// site below 1/4 and then revive above 1/2; the revival maximum is refined
// parabolically.  Throws no_oscillation_error otherwise.
OscillationEstimate measure_oscillation_period(const DynamicsTrace& trace,
                                               int site);

} // namespace tcqed
