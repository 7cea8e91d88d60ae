#include "tcqed/lattice.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "tcqed/numerics.hpp"

namespace tcqed {

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

ArrayParams ArrayParams::uniform(int n_cells, double qubit_freq, double t0,
                                 double phi, double gamma) {
    ArrayParams p;
    p.n_cells = n_cells;
    p.qubit_freq = qubit_freq;
    p.t0 = t0;
    p.phi = phi;
    p.qubit_decays = Eigen::VectorXd::Constant(2 * n_cells, gamma);
    p.frequency_offsets = Eigen::VectorXd::Zero(2 * n_cells);
    p.validate();
    return p;
}

void ArrayParams::validate() const {
    if (n_cells < 1) throw std::invalid_argument("ArrayParams: n_cells must be >= 1");
    if (t0 <= 0.0) throw std::invalid_argument("ArrayParams: t0 must be > 0");
    if (phi < 0.0 || phi > pi)
        throw std::domain_error("ArrayParams: phi must lie in [0, pi]");
    if (qubit_decays.size() != n_sites())
        throw std::invalid_argument("ArrayParams: qubit_decays must have length 2N");
    if (frequency_offsets.size() != n_sites())
        throw std::invalid_argument("ArrayParams: frequency_offsets must have length 2N");
    if ((qubit_decays.array() < 0.0).any())
        throw std::invalid_argument("ArrayParams: decays must be nonnegative");
}

std::pair<double, double> couplings_from_phi(double t0, double phi) {
    if (t0 <= 0.0) throw std::domain_error("couplings_from_phi: t0 must be > 0");
    if (phi < 0.0 || phi > pi)
        throw std::domain_error("couplings_from_phi: phi must lie in [0, pi]");
    const double t1 = t0 * (1.0 - std::cos(phi));
    return {t1, 2.0 * t0 - t1};  // keeps t1 + t2 = 2 t0 exact
}

Eigen::MatrixXd build_hamiltonian(const ArrayParams& params) {
    params.validate();
    const int n = params.n_sites();
    const auto [t1, t2] = couplings_from_phi(params.t0, params.phi);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        h(i, i) = params.qubit_freq + params.frequency_offsets[i];
    for (int b = 0; b + 1 < n; ++b) {
        const double t = (b % 2 == 0) ? t1 : t2;
        h(b, b + 1) = t;
        h(b + 1, b) = t;
    }
    return h;
}

const char* to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::None: return "none";
    }
    return "?";
}

const char* to_string(ModeClass c) {
    switch (c) {
        case ModeClass::EdgeHybridEven: return "edge-hybrid-even";
        case ModeClass::EdgeHybridOdd: return "edge-hybrid-odd";
        case ModeClass::EdgeLeft: return "edge-left";
        case ModeClass::EdgeRight: return "edge-right";
        case ModeClass::BulkLower: return "bulk-lower";
        case ModeClass::BulkUpper: return "bulk-upper";
    }
    return "?";
}

double coupling_coefficient(const Eigen::VectorXd& amplitudes) {
    return amplitudes.sum();
}

double rescaling_factor(double coupling, int n_cells) {
    return coupling / std::sqrt(2.0 * n_cells);
}

std::pair<Parity, ModeClass> classify_mode(const Eigen::VectorXd& amplitudes,
                                           double energy,
                                           const ArrayParams& params,
                                           double parity_tol) {
    const int n_c = params.n_cells;
    const auto [t1, t2] = couplings_from_phi(params.t0, params.phi);

    // Mirror pairing A_i <-> B_{N+1-i}: component 2i-2 pairs with 2N+1-2i
    // (0-based).  Scanning i covers every site exactly once in each role.
    bool even = true, odd = true;
    for (int i = 1; i <= n_c; ++i) {
        const double a = amplitudes[2 * i - 2];
        const double b = amplitudes[2 * (n_c + 1 - i) - 1];
        if (std::abs(a - b) > parity_tol) even = false;
        if (std::abs(a + b) > parity_tol) odd = false;
        if (!even && !odd) break;
    }
    Parity parity = even ? Parity::Even : (odd ? Parity::Odd : Parity::None);

    const double detuning = energy - params.qubit_freq;
    const double gap_half = 0.5 * (t2 - t1);
    const bool is_edge = gap_half > 0.0 && std::abs(detuning) < gap_half;
    if (!is_edge) {
        return {parity, detuning < 0.0 ? ModeClass::BulkLower : ModeClass::BulkUpper};
    }
    if (parity == Parity::Even) return {parity, ModeClass::EdgeHybridEven};
    if (parity == Parity::Odd) return {parity, ModeClass::EdgeHybridOdd};
    // Localized: pick the side carrying more weight.
    const int half = n_c;  // first N of 2N components
    const double left = amplitudes.head(half).squaredNorm();
    return {Parity::None,
            left >= 0.5 ? ModeClass::EdgeLeft : ModeClass::EdgeRight};
}

namespace {

// Flip the sign so the first component above 1e-12 of the max magnitude is
// positive.  Gives a deterministic global phase for nondegenerate modes.
void fix_sign_first_nonzero(Eigen::Ref<Eigen::VectorXd> v) {
    const double thr = 1e-12 * v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > thr) {
            if (v[i] < 0.0) v = -v;
            return;
        }
    }
}

// Flip the sign so the dominant component is positive.  Used for the
// localized edge pair, whose leading components sit at the chain ends; the
// first-nonzero rule would key on exponentially small tail entries there.
void fix_sign_dominant(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
}

} // namespace

std::vector<EigenMode> eigensystem(const ArrayParams& params,
                                   const EigensystemOptions& opts) {
    const Eigen::MatrixXd h = build_hamiltonian(params);
    const int n = params.n_sites();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw convergence_error("eigensystem: eigensolver did not converge");

    Eigen::VectorXd energies = solver.eigenvalues();
    Eigen::MatrixXd vectors = solver.eigenvectors();

    const auto [t1, t2] = couplings_from_phi(params.t0, params.phi);
    const double gap_half = 0.5 * (t2 - t1);

    std::vector<int> midgap;
    if (gap_half > 0.0) {
        for (int j = 0; j < n; ++j)
            if (std::abs(energies[j] - params.qubit_freq) < gap_half)
                midgap.push_back(j);
    }

    bool localized_pair = false;
    int loc_a = -1, loc_b = -1;
    if (midgap.size() == 2) {
        loc_a = midgap[0];
        loc_b = midgap[1];
        const double splitting = std::abs(energies[loc_b] - energies[loc_a]);
        if (splitting <= opts.hybridization_threshold_rel * params.t0) {
            // The pair is degenerate below resolution; any rotation of the
            // two vectors is equally valid numerically.  Pick the localized
            // combination deterministically: diagonalize the 2x2 left-half
            // weight matrix and take its extremal vectors.
            const int half = params.n_cells;
            Eigen::VectorXd v1 = vectors.col(loc_a);
            Eigen::VectorXd v2 = vectors.col(loc_b);
            Eigen::Matrix2d w;
            w(0, 0) = v1.head(half).squaredNorm();
            w(0, 1) = w(1, 0) = v1.head(half).dot(v2.head(half));
            w(1, 1) = v2.head(half).squaredNorm();
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> wsolve(w);
            const Eigen::Vector2d c_left = wsolve.eigenvectors().col(1);
            const Eigen::Vector2d c_right = wsolve.eigenvectors().col(0);
            Eigen::VectorXd v_left = c_left[0] * v1 + c_left[1] * v2;
            Eigen::VectorXd v_right = c_right[0] * v1 + c_right[1] * v2;
            fix_sign_dominant(v_left);
            fix_sign_dominant(v_right);
            const double e_left = v_left.dot(h * v_left);
            const double e_right = v_right.dot(h * v_right);
            // Keep the ascending-energy contract across the pair.
            if (e_left <= e_right) {
                vectors.col(loc_a) = v_left;
                vectors.col(loc_b) = v_right;
                energies[loc_a] = e_left;
                energies[loc_b] = e_right;
            } else {
                vectors.col(loc_a) = v_right;
                vectors.col(loc_b) = v_left;
                energies[loc_a] = e_right;
                energies[loc_b] = e_left;
            }
            localized_pair = true;
        }
    }

    std::vector<EigenMode> modes(n);
    for (int j = 0; j < n; ++j) {
        const bool is_loc = localized_pair && (j == loc_a || j == loc_b);
        if (!is_loc) fix_sign_first_nonzero(vectors.col(j));
        EigenMode& m = modes[j];
        m.index = j + 1;
        m.energy = energies[j];
        m.amplitudes = vectors.col(j);
        m.coupling = coupling_coefficient(m.amplitudes);
        std::tie(m.parity, m.mode_class) =
            classify_mode(m.amplitudes, m.energy, params, opts.parity_tol);
    }
    return modes;
}

double phi_of_k(double k, double t1, double t2) {
    if (t2 <= 0.0) throw std::domain_error("phi_of_k: t2 must be > 0");
    if (!(k > 0.0 && k < pi))
        throw std::domain_error("phi_of_k: k must lie strictly inside (0, pi)");
    // arccot(t1/(t2 sin k) + cot k) on the (0, pi) branch is the argument of
    // t1 + t2 e^{ik}; atan2 keeps it continuous through the cot poles.
    return std::atan2(t2 * std::sin(k), t1 + t2 * std::cos(k));
}

namespace {

double quantization_residual(double k, int n_cells, double t1, double t2, int tau) {
    return k * (n_cells + 1) - phi_of_k(k, t1, t2) - tau * pi;
}

double solve_quantization(int n_cells, double t1, double t2, int tau) {
    const double lo_edge = 1e-12;
    const double hi_edge = pi - 1e-12;
    auto f = [&](double k) { return quantization_residual(k, n_cells, t1, t2, tau); };

    // N+1 uniform brackets; near the transition the condition steepens close
    // to k = pi, so fall back to a fine scan if the coarse pass misses.
    for (int n_brackets : {n_cells + 1, 64 * (n_cells + 1)}) {
        const double h = (hi_edge - lo_edge) / n_brackets;
        double prev_x = lo_edge, prev_f = f(prev_x);
        for (int i = 1; i <= n_brackets; ++i) {
            const double x = lo_edge + i * h;
            const double fx = f(x);
            if (prev_f == 0.0) return prev_x;
            if (prev_f * fx <= 0.0) {
                const double root = solve_bracketed(f, prev_x, x);
                if (std::abs(f(root)) < 1e-10) return root;
            }
            prev_x = x;
            prev_f = fx;
        }
    }
    throw convergence_error("bulk_momenta: no quantization root for tau=" +
                            std::to_string(tau));
}

} // namespace

std::vector<BulkMomentum> bulk_momenta(const ArrayParams& params) {
    params.validate();
    const auto [t1, t2] = couplings_from_phi(params.t0, params.phi);
    if (params.phi >= pi / 2.0 || !(t1 < t2))
        throw unsupported_regime_error(
            "bulk_momenta: analytic bulk forms require the topological phase (t1 < t2)");
    std::vector<BulkMomentum> out;
    out.reserve(params.n_cells - 1);
    double prev = 0.0;
    for (int tau = 1; tau <= params.n_cells - 1; ++tau) {
        BulkMomentum m;
        m.tau = tau;
        m.k = solve_quantization(params.n_cells, t1, t2, tau);
        m.band = Band::Lower;
        if (m.k <= prev)
            throw convergence_error("bulk_momenta: roots are not strictly increasing");
        prev = m.k;
        out.push_back(m);
    }
    return out;
}

BulkMomentum momentum_for_mode(const ArrayParams& params, int mode_index) {
    const int n_c = params.n_cells;
    const int n = 2 * n_c;
    if (mode_index < 1 || mode_index > n)
        throw std::invalid_argument("momentum_for_mode: mode index out of range");
    if (mode_index == n_c || mode_index == n_c + 1)
        throw std::invalid_argument("momentum_for_mode: indices N and N+1 are edge states");
    const auto all = bulk_momenta(params);
    if (mode_index <= n_c - 1) return all[mode_index - 1];
    BulkMomentum m = all[(2 * n_c + 1 - mode_index) - 1];  // tau' = tau_{2N+1-j}
    m.band = Band::Upper;
    return m;
}

Eigen::VectorXd analytic_bulk_state(const ArrayParams& params,
                                    const BulkMomentum& km) {
    const auto [t1, t2] = couplings_from_phi(params.t0, params.phi);
    const int n_c = params.n_cells;
    const double fk = phi_of_k(km.k, t1, t2);
    const double b_sign = (km.band == Band::Lower) ? -1.0 : 1.0;
    Eigen::VectorXd v(2 * n_c);
    for (int i = 1; i <= n_c; ++i) {
        v[2 * i - 2] = std::sin(i * km.k - fk);
        v[2 * i - 1] = b_sign * std::sin(i * km.k);
    }
    v.normalize();
    fix_sign_first_nonzero(v);
    return v;
}

double analytic_bulk_coupling(const ArrayParams& params, const BulkMomentum& km) {
    // Sum of the normalized analytic state.  The nominal (2N)^(-1/2) bulk
    // prefactor would undercount by sqrt(2): each sublattice carries weight
    // N/2, so the raw sine vector has squared norm N, not 2N.
    return analytic_bulk_state(params, km).sum();
}

std::pair<Eigen::VectorXd, Eigen::VectorXd>
analytic_edge_states(const ArrayParams& params) {
    params.validate();
    const auto [t1, t2] = couplings_from_phi(params.t0, params.phi);
    if (params.phi >= pi / 2.0 || !(t1 < t2))
        throw unsupported_regime_error(
            "analytic_edge_states: edge states require the topological phase (t1 < t2)");
    const int n_c = params.n_cells;
    const double r = t1 / t2;
    // N-term geometric normalization sum_i r^{2(i-1)}.
    double norm_sq = 0.0;
    for (int i = 0; i < n_c; ++i) norm_sq += std::pow(r, 2 * i);
    const double inv = 1.0 / std::sqrt(norm_sq);
    Eigen::VectorXd left = Eigen::VectorXd::Zero(2 * n_c);
    Eigen::VectorXd right = Eigen::VectorXd::Zero(2 * n_c);
    for (int i = 1; i <= n_c; ++i) {
        left[2 * i - 2] = inv * std::pow(-r, i - 1);
        right[2 * i - 1] = inv * std::pow(-r, n_c - i);
    }
    return {left, right};
}

double analytic_edge_coupling(const ArrayParams& params) {
    const auto [left, right] = analytic_edge_states(params);
    return left.sum();
}

void write_amplitudes_csv(std::ostream& os, const Eigen::VectorXd& amplitudes) {
    if (amplitudes.size() % 2 != 0)
        throw std::invalid_argument("write_amplitudes_csv: amplitude length must be 2N");
    os << "site_index,sublattice,amplitude\n";
    std::ostringstream line;
    line.precision(12);
    for (Eigen::Index n = 0; n < amplitudes.size(); ++n) {
        line.str("");
        line << (n / 2 + 1) << ',' << (n % 2 == 0 ? 'A' : 'B') << ','
             << amplitudes[n] << '\n';
        os << line.str();
    }
}

} // namespace tcqed
