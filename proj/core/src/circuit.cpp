#include "tcqed/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "tcqed/numerics.hpp"
#include "tcqed/units.hpp"

namespace tcqed {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

double CouplerCircuit::critical_current() const {
    return units::flux_quantum / (units::two_pi * l_0);
}

void CouplerCircuit::validate() const {
    if (l_g <= 0.0 || l_0 <= 0.0 || l_j <= 0.0)
        throw std::invalid_argument("CouplerCircuit: inductances must be > 0");
    if (qubit_freq <= 0.0)
        throw std::invalid_argument("CouplerCircuit: qubit_freq must be > 0");
}

void ResonatorCoupler::validate() const {
    if (lt_g <= 0.0 || lt_0 <= 0.0 || l_c <= 0.0)
        throw std::invalid_argument("ResonatorCoupler: inductances must be > 0");
    if (cavity_freq <= 0.0)
        throw std::invalid_argument("ResonatorCoupler: cavity_freq must be > 0");
}

double junction_coupling(const CouplerCircuit& c, double delta) {
    c.validate();
    const double x = std::cos(delta);
    const double den = 2.0 * c.l_g * x + c.l_0;
    if (std::abs(den) < 1e-9 * c.l_g)
        throw singularity_error("junction_coupling: coupler pole 2 L_g cos delta + L_0 = 0");
    return -(c.qubit_freq / 2.0) * c.l_g * c.l_g * x /
           ((c.l_j + c.l_g) * den);
}

double delta_for_coupling(const CouplerCircuit& c, double t_target,
                          CouplingSign branch) {
    c.validate();
    if (t_target < 0.0)
        throw std::domain_error("delta_for_coupling: pass a magnitude; pick the sign via the branch");
    const double t_signed = (branch == CouplingSign::Positive) ? t_target : -t_target;
    const double a = c.qubit_freq * c.l_g * c.l_g / (2.0 * (c.l_j + c.l_g));
    const double den = a + 2.0 * c.l_g * t_signed;
    if (den == 0.0)
        throw std::domain_error("delta_for_coupling: target sits on the coupler pole");
    const double cos_delta = -c.l_0 * t_signed / den;
    if (cos_delta < -1.0 || cos_delta > 1.0) {
        std::ostringstream msg;
        msg << "delta_for_coupling: coupling " << t_target
            << " rad/us is unreachable on this branch (cos delta = " << cos_delta << ")";
        throw std::domain_error(msg.str());
    }
    return std::acos(cos_delta);
}

double flux_for_delta(const CouplerCircuit& c, double delta) {
    c.validate();
    return c.c0() * delta + std::sin(delta);
}

double delta_for_flux(const CouplerCircuit& c, double phi_ext) {
    c.validate();
    const double c0 = c.c0();
    auto f = [&](double d) { return c0 * d + std::sin(d) - phi_ext; };

    // Collect every root in (0, pi); c0 > 1 guarantees at most one.
    std::vector<double> roots;
    const int n_scan = 4096;
    double prev_x = 0.0, prev_f = f(0.0);
    for (int i = 1; i <= n_scan; ++i) {
        const double x = pi * i / n_scan;
        const double fx = f(x);
        if (prev_f == 0.0)
            roots.push_back(prev_x);
        else if (prev_f * fx < 0.0)
            roots.push_back(solve_bracketed(f, prev_x, x, 1e-15));
        prev_x = x;
        prev_f = fx;
    }
    if (f(pi) == 0.0) roots.push_back(pi);

    if (roots.empty())
        throw std::domain_error("delta_for_flux: phi_ext outside the reachable range [0, c0*pi]");
    if (roots.size() > 1) {
        std::ostringstream msg;
        msg << "delta_for_flux: " << roots.size()
            << " roots in (0, pi) with c0 = " << c0 << " <= 1; delta =";
        for (double r : roots) msg << ' ' << r;
        throw ambiguity_error(msg.str());
    }
    const double root = roots.front();
    if (std::abs(f(root)) > 1e-12)
        throw convergence_error("delta_for_flux: residual above 1e-12");
    return root;
}

double external_flux(const CouplerCircuit& c, double phi_ext) {
    return phi_ext * 2.0 * c.l_g * c.critical_current();
}

double coupler_qubit_effective_coupling(double t_ab, double t_a, double delta0) {
    if (delta0 == 0.0)
        throw singularity_error("coupler_qubit_effective_coupling: Delta_0 = 0");
    return t_ab + t_a * t_a / delta0;
}

bool coupler_dispersive_strained(double t_a, double delta0) {
    return delta0 == 0.0 || std::abs(t_a / delta0) > 0.3;
}

double qubit_resonator_coupling(const ResonatorCoupler& rc, double qubit_freq) {
    rc.validate();
    if (qubit_freq <= 0.0)
        throw std::invalid_argument("qubit_resonator_coupling: qubit_freq must be > 0");
    const double x = std::cos(rc.delta_t);
    const double m_den = 2.0 * rc.lt_g * x + rc.lt_0;
    if (std::abs(m_den) < 1e-9 * rc.lt_g)
        throw singularity_error("qubit_resonator_coupling: coupler pole 2 L_g cos delta + L_0 = 0");
    const double mutual = rc.lt_g * rc.lt_g * x / m_den;
    // L_1A = Lt_0/cos(delta) turns negative past pi/2; the inductance product
    // enters through its magnitude so g stays real, with the sign carried by
    // the mutual inductance.
    const double prod = (rc.lt_g * x + rc.lt_0) / x * (rc.lt_g + rc.l_c);
    if (std::abs(prod) < 1e-12 * rc.lt_g * rc.lt_g)
        throw singularity_error("qubit_resonator_coupling: vanishing inductance product");
    return -(mutual / 2.0) *
           std::sqrt(qubit_freq * rc.cavity_freq / std::abs(prod));
}

FrequencyShifts frequency_shifts(double t, double t0, double g0, double omega0) {
    if (omega0 <= 0.0)
        throw std::invalid_argument("frequency_shifts: omega0 must be > 0");
    return {-t, -t0 * g0 / omega0};
}

Eigen::VectorXd array_frequency_shifts(const ArrayParams& params) {
    params.validate();
    const auto [t1, t2] = couplings_from_phi(params.t0, params.phi);
    const int n = params.n_sites();
    Eigen::VectorXd shifts = Eigen::VectorXd::Zero(n);
    for (int b = 0; b + 1 < n; ++b) {
        const double t = (b % 2 == 0) ? t1 : t2;
        shifts[b] -= t;
        shifts[b + 1] -= t;
    }
    return shifts;
}

} // namespace tcqed
