// scattering.hpp — single-photon waveguide transport through the
// edge-coupled array reduced to a three-level superatom: transmission
// amplitude, susceptibility, pole/Lorentzian decomposition, and the
// interference-vs-splitting transparency classification.
//
// All rates are in a common unit; the conventional choice is units of the
// waveguide-induced decay Gamma_L, which superatom_from_system produces.

#pragma once

#include <array>
#include <complex>

#include "tcqed/dispersive.hpp"
#include "tcqed/lattice.hpp"

namespace tcqed {

struct ScatteringParams {
    double j_coupling{0.0};   // edge-edge coupling J
    double gamma_left{0.0};   // left-edge parasitic decay
    double gamma_right{0.0};  // right-edge parasitic decay
    double gamma_wg{1.0};     // waveguide-induced decay Gamma_L (> 0)
    double probe_offset{0.0}; // Delta_p zero sits at omega_0 + g_L^2/Delta_0

    void validate() const;
    // Same physics with rates rescaled so Gamma_L = 1.
    ScatteringParams normalized() const;
};

// Single-photon transmission amplitude
//   t = [(i D - gL/2)(i D - gR/2) + J^2] / [(i D - (gL+GL)/2)(i D - gR/2) + J^2].
std::complex<double> transmission_amplitude(double delta_p,
                                            const ScatteringParams& sp);

// chi = -i (t - 1)/t; throws singularity_error at t = 0.
std::complex<double> susceptibility(std::complex<double> t);

// Closed form chi = GL (D + i gR/2) / (2 J^2 - 2 (D + i gL/2)(D + i gR/2)).
std::complex<double> susceptibility_closed_form(double delta_p,
                                                const ScatteringParams& sp);

struct PoleDecomposition {
    std::array<std::complex<double>, 2> poles;     // Im < 0 for passive rates
    std::array<std::complex<double>, 2> residues;  // chi = sum r_i/(D - p_i)
    std::array<int, 2> peak_signs;                 // sign of each component's
                                                   // Im extremum on real D
    std::array<double, 2> peak_positions;          // location of that extremum
};

// Partial fractions of the closed-form susceptibility.  Throws
// singularity_error at the exceptional point where the two poles collide
// (4 J^2 = (gL - gR)^2 / 4).
PoleDecomposition decompose_poles(const ScatteringParams& sp);

enum class TransparencyClass { None, Interference, Splitting };
const char* to_string(TransparencyClass c);

struct TransparencyReport {
    TransparencyClass cls{TransparencyClass::None};
    // Distance between the two decomposed Im-component extrema; zero in the
    // interference regime (both poles on the imaginary axis), about 2J in
    // the splitting regime.
    double component_peak_distance{0.0};
    // Distance between the two |t|^2 minima bounding the window (0 if the
    // transmission dip does not split).
    double dip_distance{0.0};
    double two_j{0.0};
};

// Interference when the decomposition has opposite-sign Im peaks, Splitting
// when both are positive, None at J = 0.
TransparencyReport classify_transparency(const ScatteringParams& sp);

// Reduction of the full model to superatom parameters: J from the
// cavity-mediated edge coupling cos(phi) g0^2/Delta_0, parasitic and
// waveguide rates supplied by the caller (all in rad/us).  The probe
// detuning offset g_L^2/Delta_0 with g_L = sqrt(cos phi) g0 is recorded in
// probe_offset.  Throws unsupported_regime_error outside the topological
// phase.
ScatteringParams superatom_from_system(const ArrayParams& array,
                                       const DispersiveParams& disp,
                                       double gamma_left, double gamma_right,
                                       double gamma_wg);

} // namespace tcqed
