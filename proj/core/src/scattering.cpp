#include "tcqed/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace tcqed {

using complexd = std::complex<double>;

namespace {
constexpr complexd i_unit{0.0, 1.0};
} // namespace

void ScatteringParams::validate() const {
    if (j_coupling < 0.0 || gamma_left < 0.0 || gamma_right < 0.0 || gamma_wg < 0.0)
        throw std::invalid_argument("ScatteringParams: rates must be >= 0");
}

ScatteringParams ScatteringParams::normalized() const {
    validate();
    if (gamma_wg <= 0.0)
        throw std::invalid_argument(
            "ScatteringParams::normalized: needs Gamma_L > 0 as the unit");
    ScatteringParams out = *this;
    out.j_coupling /= gamma_wg;
    out.gamma_left /= gamma_wg;
    out.gamma_right /= gamma_wg;
    out.probe_offset /= gamma_wg;
    out.gamma_wg = 1.0;
    return out;
}

complexd transmission_amplitude(double delta_p, const ScatteringParams& sp) {
    sp.validate();
    const complexd id{0.0, delta_p};
    const double j2 = sp.j_coupling * sp.j_coupling;
    const complexd num =
        (id - sp.gamma_left / 2.0) * (id - sp.gamma_right / 2.0) + j2;
    const complexd den =
        (id - (sp.gamma_left + sp.gamma_wg) / 2.0) * (id - sp.gamma_right / 2.0) + j2;
    return num / den;
}

complexd susceptibility(complexd t) {
    if (t == complexd(0.0, 0.0))
        throw singularity_error("susceptibility: t = 0");
    return -i_unit * (t - 1.0) / t;
}

complexd susceptibility_closed_form(double delta_p, const ScatteringParams& sp) {
    sp.validate();
    const complexd dl{delta_p, sp.gamma_left / 2.0};
    const complexd dr{delta_p, sp.gamma_right / 2.0};
    return sp.gamma_wg * dr /
           (2.0 * sp.j_coupling * sp.j_coupling - 2.0 * dl * dr);
}

namespace {

// Location and value of the extremum of Im[r/(D - p)] on the real axis with
// the larger magnitude.  With r = a + ib and p = u + iv (v < 0):
//   Im = (b (D-u) + a v) / ((D-u)^2 + v^2),
// whose stationary points solve b x^2 + 2 a v x - b v^2 = 0 in x = D - u.
std::pair<double, double> component_extremum(complexd r, complexd p) {
    const double a = r.real(), b = r.imag();
    const double u = p.real(), v = p.imag();
    auto value = [&](double x) {
        return (b * x + a * v) / (x * x + v * v);
    };
    if (b == 0.0) return {u, value(0.0)};
    const double root = std::sqrt(a * a + b * b);
    const double x1 = v * (-a + root) / b;
    const double x2 = v * (-a - root) / b;
    const double y1 = value(x1), y2 = value(x2);
    return std::abs(y1) >= std::abs(y2) ? std::pair{u + x1, y1}
                                        : std::pair{u + x2, y2};
}

} // namespace

PoleDecomposition decompose_poles(const ScatteringParams& sp) {
    sp.validate();
    // chi = GL (D + i gR/2) / (-2 (D - p+)(D - p-)), quadratic roots of
    //   D^2 + i D (gL + gR)/2 - (gL gR/4 + J^2) = 0.
    const double b = (sp.gamma_left + sp.gamma_right) / 2.0;
    const double disc = 4.0 * sp.j_coupling * sp.j_coupling -
                        0.25 * (sp.gamma_left - sp.gamma_right) *
                            (sp.gamma_left - sp.gamma_right);
    const complexd sq = std::sqrt(complexd(disc, 0.0));
    const complexd p_plus = -i_unit * b / 2.0 + sq / 2.0;
    const complexd p_minus = -i_unit * b / 2.0 - sq / 2.0;
    const double scale = std::max({sp.gamma_wg, sp.gamma_left, sp.gamma_right,
                                   sp.j_coupling, 1e-300});
    if (std::abs(p_plus - p_minus) <= 1e-12 * scale)
        throw singularity_error(
            "decompose_poles: degenerate double pole (exceptional point at "
            "4 J^2 = (gamma_L - gamma_R)^2 / 4)");

    PoleDecomposition out;
    out.poles = {p_plus, p_minus};
    out.residues = {
        sp.gamma_wg * (p_plus + i_unit * sp.gamma_right / 2.0) /
            (-2.0 * (p_plus - p_minus)),
        sp.gamma_wg * (p_minus + i_unit * sp.gamma_right / 2.0) /
            (-2.0 * (p_minus - p_plus)),
    };
    for (int i = 0; i < 2; ++i) {
        const auto [pos, val] = component_extremum(out.residues[i], out.poles[i]);
        out.peak_positions[i] = pos;
        out.peak_signs[i] = (val > 0.0) - (val < 0.0);
    }
    return out;
}

const char* to_string(TransparencyClass c) {
    switch (c) {
        case TransparencyClass::None: return "none";
        case TransparencyClass::Interference: return "interference";
        case TransparencyClass::Splitting: return "splitting";
    }
    return "?";
}

TransparencyReport classify_transparency(const ScatteringParams& sp) {
    sp.validate();
    TransparencyReport report;
    report.two_j = 2.0 * sp.j_coupling;
    if (sp.j_coupling == 0.0) return report;

    const auto poles = decompose_poles(sp);
    report.component_peak_distance =
        std::abs(poles.peak_positions[0] - poles.peak_positions[1]);
    report.cls = (poles.peak_signs[0] > 0 && poles.peak_signs[1] > 0)
                     ? TransparencyClass::Splitting
                     : TransparencyClass::Interference;

    // Transmission dips bounding the window, from a grid scan over the
    // resonant region.
    const double span = 10.0 * std::max({sp.gamma_wg, 2.0 * sp.j_coupling,
                                         sp.gamma_left});
    const int n_grid = 20001;
    const double h = 2.0 * span / (n_grid - 1);
    double prev2 = 0.0, prev1 = 0.0;
    std::vector<double> dips;
    for (int i = 0; i < n_grid; ++i) {
        const double d = -span + h * i;
        const double t2 = std::norm(transmission_amplitude(d, sp));
        if (i >= 2 && prev1 < prev2 && prev1 <= t2)
            dips.push_back(d - h);
        prev2 = prev1;
        prev1 = t2;
    }
    if (dips.size() >= 2)
        report.dip_distance = dips.back() - dips.front();
    return report;
}

ScatteringParams superatom_from_system(const ArrayParams& array,
                                       const DispersiveParams& disp,
                                       double gamma_left, double gamma_right,
                                       double gamma_wg) {
    array.validate();
    disp.validate();
    if (array.phi >= std::numbers::pi / 2.0)
        throw unsupported_regime_error(
            "superatom_from_system: requires the topological phase (phi < pi/2)");
    ScatteringParams sp;
    sp.j_coupling = edge_state_coupling(array, disp);
    sp.gamma_left = gamma_left;
    sp.gamma_right = gamma_right;
    sp.gamma_wg = gamma_wg;
    // g_L = g_R = sqrt(cos phi) g0; the probe detuning is measured from
    // omega_0 + g_L^2/Delta_0.
    sp.probe_offset = std::cos(array.phi) * disp.g0 * disp.g0 / disp.delta0;
    sp.validate();
    return sp;
}

} // namespace tcqed
