// lattice.hpp — single-excitation SSH qubit array: Hamiltonian, eigenmodes,
// analytic bulk/edge wavefunctions, parity classification, and the
// cavity-mode coupling coefficients.
//
// Site ordering is A1, B1, A2, B2, ..., AN, BN.  The dimerized couplings are
//   t1 = t0 (1 - cos phi),  t2 = t0 (1 + cos phi),
// so phi < pi/2 (t1 < t2) is the topological phase with two mid-gap edge
// states, and phi = pi/2 is the transition point.

#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <utility>
#include <vector>

#include "tcqed/errors.hpp"

namespace tcqed {

struct ArrayParams {
    int n_cells{1};                        // N unit cells (2N qubits)
    double qubit_freq{0.0};                // omega_0 [rad/us]
    double t0{0.0};                        // coupling scale [rad/us]
    double phi{0.0};                       // tuning angle in [0, pi]
    Eigen::VectorXd qubit_decays;          // gamma per site, length 2N [rad/us]
    Eigen::VectorXd frequency_offsets;     // epsilon per site, length 2N [rad/us]

    static ArrayParams uniform(int n_cells, double qubit_freq, double t0,
                               double phi, double gamma = 0.0);

    int n_sites() const { return 2 * n_cells; }
    // Throws std::invalid_argument / std::domain_error on violated invariants.
    void validate() const;
};

// (t1, t2) from the tuning angle; throws std::domain_error outside [0, pi].
std::pair<double, double> couplings_from_phi(double t0, double phi);

// 2N x 2N real symmetric single-excitation Hamiltonian: diagonal
// omega_0 + epsilon_n, first off-diagonal alternating t1, t2, t1, ...
Eigen::MatrixXd build_hamiltonian(const ArrayParams& params);

enum class Parity { Even, Odd, None };
enum class ModeClass {
    EdgeHybridEven,
    EdgeHybridOdd,
    EdgeLeft,
    EdgeRight,
    BulkLower,
    BulkUpper,
};

const char* to_string(Parity p);
const char* to_string(ModeClass c);

struct EigenMode {
    int index{0};                  // 1-based, ascending energy
    double energy{0.0};            // omega_j [rad/us]
    Eigen::VectorXd amplitudes;    // xi_{n,j}, unit norm, fixed sign convention
    Parity parity{Parity::None};
    ModeClass mode_class{ModeClass::BulkLower};
    double coupling{0.0};          // xi_j = sum of all amplitude components
};

struct EigensystemOptions {
    // The mid-gap pair counts as hybridized when its energy splitting exceeds
    // this fraction of t0; below it the pair is rotated to left/right
    // localized modes (which the exact degenerate limit leaves undetermined).
    double hybridization_threshold_rel{1e-6};
    // Tolerance for the mirror-symmetry test in classify_mode.
    double parity_tol{1e-8};
};

// All 2N eigenmodes, ascending in energy, with deterministic sign convention:
// the first component above 1e-12 of the max magnitude is strictly positive.
// An unhybridized mid-gap pair is returned as localized left/right modes
// oriented so their dominant component (hence their coupling) is positive.
std::vector<EigenMode> eigensystem(const ArrayParams& params,
                                   const EigensystemOptions& opts = {});

// Parity and class of a normalized mode.  Parity compares amplitudes under
// the mirror pairing A_i <-> B_{N+1-i}; a mode is Edge when its energy lies
// within (t2 - t1)/2 of omega_0, else BulkLower/BulkUpper by the energy sign.
std::pair<Parity, ModeClass> classify_mode(const Eigen::VectorXd& amplitudes,
                                           double energy,
                                           const ArrayParams& params,
                                           double parity_tol = 1e-8);

// xi_j: the summed amplitude components (homogeneous cavity coupling weight).
double coupling_coefficient(const Eigen::VectorXd& amplitudes);

// epsilon_j = xi_j / sqrt(2N).
double rescaling_factor(double coupling, int n_cells);

// Bulk-band phase phi(k) = arccot(t1/(t2 sin k) + cot k), continuous branch
// in (0, pi); equals arg(t1 + t2 e^{ik}).  Throws std::domain_error at the
// endpoints k = 0, pi.
double phi_of_k(double k, double t1, double t2);

enum class Band { Lower, Upper };

struct BulkMomentum {
    int tau{0};          // quantization label in [1, N-1]
    double k{0.0};       // momentum in (0, pi)
    Band band{Band::Lower};
};

// The N-1 lower-band momenta solving k(N+1) - phi(k) = tau*pi, strictly
// increasing in tau, each with residual < 1e-10.  The upper band reuses the
// same momenta: mode j in [N+2, 2N] carries k of the mirrored label
// tau = 2N+1-j.  Requires the topological phase (t1 < t2).
std::vector<BulkMomentum> bulk_momenta(const ArrayParams& params);

// Momentum assigned to the 1-based bulk mode index j (lower band j <= N-1,
// upper band j >= N+2); throws std::invalid_argument for the edge pair.
BulkMomentum momentum_for_mode(const ArrayParams& params, int mode_index);

// Analytic bulk eigenvector: sin(i k - phi(k)) on A sites and -/+ sin(i k)
// on B sites for the lower/upper band, normalized and sign-fixed like the
// numeric eigensystem output.
Eigen::VectorXd analytic_bulk_state(const ArrayParams& params,
                                    const BulkMomentum& km);

// Coupling coefficient of the analytic bulk state: the sum of its
// normalized components, proportional to sum_i sin(i k - phi(k)) and zero
// for odd-parity modes.  Equals (2/sqrt(N)) sum_i sin(i k - phi(k)) up to
// the O(1/N) fluctuation of the sine-vector norm about N.
double analytic_bulk_coupling(const ArrayParams& params, const BulkMomentum& km);

// Analytic localized edge states (Psi_L on A sites with geometric
// amplitudes (-t1/t2)^{i-1}, Psi_R mirrored on B sites), each unit norm with
// the N-term geometric normalization.  Requires t1 < t2.
std::pair<Eigen::VectorXd, Eigen::VectorXd>
analytic_edge_states(const ArrayParams& params);

// Sum of the analytic left-edge amplitudes; approaches sqrt(cos phi) for
// large N.  Requires t1 < t2.
double analytic_edge_coupling(const ArrayParams& params);

// Serializes one amplitude vector as CSV: site_index,sublattice,amplitude
// (site_index is the 1-based unit cell, sublattice is A or B).
void write_amplitudes_csv(std::ostream& os, const Eigen::VectorXd& amplitudes);

} // namespace tcqed
