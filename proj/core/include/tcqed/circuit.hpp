// circuit.hpp — maps between flux-tunable Josephson-coupler circuit
// parameters and the model couplings: junction phase <-> qubit-qubit
// coupling, external flux <-> junction phase, qubit-resonator coupling, and
// the coupler-induced frequency shifts.
//
// Inductances are in nH, currents in uA, angular frequencies in rad/us.

#pragma once

#include <Eigen/Dense>

#include <utility>

#include "tcqed/errors.hpp"
#include "tcqed/lattice.hpp"

namespace tcqed {

struct CouplerCircuit {
    double l_g{0.0};          // wiring inductance L_g [nH]
    double l_0{0.0};          // junction scale L_0 = Phi_0/(2 pi I_0) [nH]
    double l_j{0.0};          // qubit inductance L_J [nH]
    double qubit_freq{0.0};   // omega_0 [rad/us]

    // c_0 = L_0 / (2 L_g); c_0 > 1 guarantees a single-valued flux inversion.
    double c0() const { return l_0 / (2.0 * l_g); }
    bool monotone_inversion() const { return c0() > 1.0; }
    // Junction critical current I_0 = Phi_0/(2 pi L_0) [uA].
    double critical_current() const;
    void validate() const;
};

struct ResonatorCoupler {
    double lt_g{0.0};         // coupler wiring inductance [nH]
    double lt_0{0.0};         // coupler junction scale [nH]
    double l_c{0.0};          // resonator inductance [nH]
    double cavity_freq{0.0};  // omega_c [rad/us]
    double delta_t{0.0};      // junction phase [rad]

    void validate() const;
};

// Qubit-qubit coupling through the junction coupler at phase delta:
//   t = -(omega_0/2) L_g^2 / ((L_J + L_g)(2 L_g + L_0/cos delta)),
// evaluated in the pole-free form with cos delta multiplied through.
// Throws singularity_error at the 2 L_g cos delta + L_0 = 0 pole.
double junction_coupling(const CouplerCircuit& c, double delta);

enum class CouplingSign { Positive, Negative };

// Junction phase realizing |coupling| = t_target on the requested sign
// branch (positive couplings live at delta > pi/2).  Throws
// std::domain_error when the target is unreachable.
double delta_for_coupling(const CouplerCircuit& c, double t_target,
                          CouplingSign branch);

// Reduced external flux from the junction phase: phi_ext = c0 delta + sin delta.
double flux_for_delta(const CouplerCircuit& c, double delta);

// Inverts phi_ext = c0 delta + sin delta on (0, pi) by bracketed Newton with
// residual < 1e-12.  When c0 <= 1 admits several roots, throws
// ambiguity_error listing all of them.
double delta_for_flux(const CouplerCircuit& c, double phi_ext);

// Physical external flux Phi_ext = phi_ext * 2 L_g I_0 [nH*uA].
double external_flux(const CouplerCircuit& c, double phi_ext);

// Tunable-qubit coupler scheme: t_eff = t_AB + t_A^2/Delta_0.  Throws
// singularity_error at Delta_0 = 0.
double coupler_qubit_effective_coupling(double t_ab, double t_a, double delta0);

// True when |t_a/delta0| exceeds the dispersive comfort margin of 0.3.
bool coupler_dispersive_strained(double t_a, double delta0);

// Qubit-resonator coupling through the tunable coupler:
//   g = -(M/2) sqrt(omega_0 omega_c / |(Lt_g + L_1A)(Lt_g + L_c)|),
// with M = Lt_g^2/(2 Lt_g + Lt_0/cos delta) and L_1A = Lt_0/cos delta.
// The sign of g follows the sign of M, which crosses zero at delta = pi/2.
double qubit_resonator_coupling(const ResonatorCoupler& rc, double qubit_freq);

struct FrequencyShifts {
    double qubit_shift{0.0};     // delta omega = -t
    double coupling_shift{0.0};  // delta g = -t0 g0 / omega_0
};

// Coupler-induced corrections for one bond of strength t in an array with
// coupling scale t0 and bare cavity coupling g0.
FrequencyShifts frequency_shifts(double t, double t0, double g0, double omega0);

// Per-qubit frequency shift -sum of adjacent bond couplings; interior qubits
// of the SSH array get -(t1 + t2) = -2 t0, the two boundary qubits get -t1.
Eigen::VectorXd array_frequency_shifts(const ArrayParams& params);

} // namespace tcqed
