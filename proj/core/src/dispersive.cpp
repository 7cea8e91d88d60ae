#include "tcqed/dispersive.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <sstream>

#include "tcqed/numerics.hpp"

namespace tcqed {

using complexd = std::complex<double>;

void DispersiveParams::validate() const {
    if (delta0 == 0.0)
        throw singularity_error("DispersiveParams: Delta_0 = 0");
    if (std::abs(ratio()) >= 1.0)
        throw std::domain_error("DispersiveParams: |g0/Delta_0| must be < 1");
    if (kappa < 0.0 || gamma < 0.0)
        throw std::invalid_argument("DispersiveParams: decays must be >= 0");
}

Eigen::MatrixXcd effective_hamiltonian_qubits(const ArrayParams& array,
                                              const DispersiveParams& disp) {
    array.validate();
    disp.validate();
    const int n = array.n_sites();
    const Eigen::MatrixXd ssh =
        build_hamiltonian(array) -
        array.qubit_freq * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXcd h =
        (ssh + disp.delta0 * Eigen::MatrixXd::Identity(n, n) +
         (disp.g0 * disp.g0 / disp.delta0) * Eigen::MatrixXd::Ones(n, n))
            .cast<complexd>();
    if (disp.include_decay) {
        const double rate = disp.gamma + disp.purcell_rate();
        h.diagonal().array() -= complexd(0.0, 0.5 * rate);
    }
    return h;
}

double cavity_mediated_coupling(const EigenMode& mode_j, const EigenMode& mode_k,
                                const DispersiveParams& disp,
                                double cavity_freq) {
    const double dj = mode_j.energy - cavity_freq;
    const double dk = mode_k.energy - cavity_freq;
    const double resonance_tol = 1e-9 * std::abs(disp.delta0);
    if (std::abs(dj) <= resonance_tol || std::abs(dk) <= resonance_tol)
        throw singularity_error("cavity_mediated_coupling: mode resonant with cavity");
    const double xij = mode_j.coupling * disp.g0;
    const double xik = mode_k.coupling * disp.g0;
    return 0.5 * xij * xik * (1.0 / dj + 1.0 / dk);
}

Eigen::MatrixXcd effective_hamiltonian_modes(const ArrayParams& array,
                                             const DispersiveParams& disp) {
    array.validate();
    disp.validate();
    const double cavity_freq = array.qubit_freq - disp.delta0;
    const auto modes = eigensystem(array);
    const int n = array.n_sites();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const double dj = modes[j].energy - cavity_freq;
        if (std::abs(dj) <= 1e-9 * std::abs(disp.delta0)) {
            std::ostringstream msg;
            msg << "effective_hamiltonian_modes: mode " << modes[j].index
                << " is resonant with the cavity (Delta_j = 0)";
            throw singularity_error(msg.str());
        }
        const double xij = modes[j].coupling * disp.g0;
        h(j, j) = dj + xij * xij / dj;
        for (int k = j + 1; k < n; ++k) {
            const double jjk =
                cavity_mediated_coupling(modes[j], modes[k], disp, cavity_freq);
            h(j, k) = jjk;
            h(k, j) = jjk;
        }
    }
    return h;
}

double edge_state_coupling(const ArrayParams& array, const DispersiveParams& disp) {
    array.validate();
    disp.validate();
    if (array.phi >= std::numbers::pi / 2.0)
        throw unsupported_regime_error(
            "edge_state_coupling: requires the topological phase (phi < pi/2)");
    return std::cos(array.phi) * disp.g0 * disp.g0 / disp.delta0;
}

const char* to_string(Propagator p) {
    switch (p) {
        case Propagator::Spectral: return "spectral";
        case Propagator::GeneralEigen: return "general-eigen";
        case Propagator::ScaledTaylor: return "scaled-taylor";
    }
    return "?";
}

namespace {

// psi(t + dt) = exp(-i H dt) psi by a scaled Taylor series: substeps keep
// ||H|| dt <= 1 so the series converges in a few dozen terms.
void taylor_step(const Eigen::MatrixXcd& h, double dt, Eigen::VectorXcd& psi) {
    const double scale = h.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
    const int n_sub = std::max(1, static_cast<int>(std::ceil(std::abs(dt) * scale)));
    const double h_sub = dt / n_sub;
    for (int s = 0; s < n_sub; ++s) {
        Eigen::VectorXcd term = psi;
        Eigen::VectorXcd acc = psi;
        const double psi_scale = psi.norm();
        for (int m = 1; m <= 64; ++m) {
            term = (h * term) * (complexd(0.0, -h_sub) / static_cast<double>(m));
            acc += term;
            if (term.norm() <= 1e-16 * std::max(psi_scale, 1e-300)) break;
            if (m == 64)
                throw convergence_error("evolve_excitation: Taylor propagator did not converge");
        }
        psi = acc;
    }
}

} // namespace

DynamicsTrace evolve_excitation(const Eigen::MatrixXcd& hamiltonian,
                                int initial_site,
                                const Eigen::VectorXd& t_grid) {
    const int n = static_cast<int>(hamiltonian.rows());
    if (hamiltonian.cols() != n)
        throw std::invalid_argument("evolve_excitation: Hamiltonian must be square");
    if (initial_site < 0 || initial_site >= n)
        throw std::invalid_argument("evolve_excitation: initial_site out of range");
    if (t_grid.size() < 1)
        throw std::invalid_argument("evolve_excitation: empty time grid");

    DynamicsTrace trace;
    trace.times = t_grid;
    trace.populations.resize(t_grid.size(), n);
    trace.norm.resize(t_grid.size());

    const double herm_dev = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(hamiltonian.cwiseAbs().maxCoeff(), 1e-300);
    const bool hermitian = herm_dev <= 1e-12 * scale;

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(n);
    psi0[initial_site] = 1.0;

    auto store = [&](Eigen::Index row, const Eigen::VectorXcd& psi) {
        for (int s = 0; s < n; ++s) trace.populations(row, s) = std::norm(psi[s]);
        trace.norm[row] = trace.populations.row(row).sum();
    };

    if (hermitian) {
        trace.propagator = Propagator::Spectral;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
        if (solver.info() != Eigen::Success)
            throw convergence_error("evolve_excitation: eigensolver failed");
        const Eigen::VectorXd evals = solver.eigenvalues();
        const Eigen::MatrixXcd& vecs = solver.eigenvectors();
        const Eigen::VectorXcd coeffs = vecs.adjoint() * psi0;
        for (Eigen::Index it = 0; it < t_grid.size(); ++it) {
            Eigen::VectorXcd phases(n);
            for (int j = 0; j < n; ++j)
                phases[j] = std::exp(complexd(0.0, -evals[j] * t_grid[it])) * coeffs[j];
            store(it, vecs * phases);
        }
        return trace;
    }

    // Non-Hermitian: general eigendecomposition with a conditioning check.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
    bool use_eigen = solver.info() == Eigen::Success;
    Eigen::MatrixXcd vecs;
    Eigen::VectorXcd evals, coeffs;
    if (use_eigen) {
        vecs = solver.eigenvectors();
        evals = solver.eigenvalues();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vecs);
        const double cond = svd.singularValues()(0) /
                            std::max(svd.singularValues()(svd.singularValues().size() - 1),
                                     1e-300);
        if (cond > 1e8)
            use_eigen = false;  // defective or near-defective
        else
            coeffs = vecs.partialPivLu().solve(psi0);
    }

    if (use_eigen) {
        trace.propagator = Propagator::GeneralEigen;
        for (Eigen::Index it = 0; it < t_grid.size(); ++it) {
            Eigen::VectorXcd phases(n);
            for (int j = 0; j < n; ++j)
                phases[j] = std::exp(complexd(0.0, -1.0) * evals[j] * t_grid[it]) * coeffs[j];
            store(it, vecs * phases);
        }
        return trace;
    }

    trace.propagator = Propagator::ScaledTaylor;
    Eigen::VectorXcd psi = psi0;
    double t_prev = 0.0;
    for (Eigen::Index it = 0; it < t_grid.size(); ++it) {
        const double dt = t_grid[it] - t_prev;
        if (dt < 0.0)
            throw std::invalid_argument("evolve_excitation: time grid must be nondecreasing");
        if (dt > 0.0) taylor_step(hamiltonian, dt, psi);
        t_prev = t_grid[it];
        store(it, psi);
    }
    return trace;
}

OscillationEstimate measure_oscillation_period(const DynamicsTrace& trace,
                                               int site) {
    if (site < 0 || site >= trace.populations.cols())
        throw std::invalid_argument("measure_oscillation_period: site out of range");
    const Eigen::VectorXd p = trace.populations.col(site);
    const Eigen::Index nt = p.size();

    // Wait for the excitation to leave the site, then take the maximum of
    // the first region where it revives above 1/2.
    Eigen::Index drained = -1;
    for (Eigen::Index i = 0; i < nt; ++i) {
        if (p[i] < 0.25) { drained = i; break; }
    }
    if (drained < 0)
        throw no_oscillation_error(
            "measure_oscillation_period: population never leaves the site");
    Eigen::Index lo = drained;
    while (lo < nt && p[lo] <= 0.5) ++lo;
    if (lo >= nt)
        throw no_oscillation_error(
            "measure_oscillation_period: no revival above 0.5 in the trace");
    Eigen::Index hi = lo;
    Eigen::Index peak = lo;
    while (hi < nt && p[hi] > 0.5) {
        if (p[hi] > p[peak]) peak = hi;
        ++hi;
    }
    if (peak <= 0 || peak + 1 >= nt)
        throw no_oscillation_error(
            "measure_oscillation_period: revival truncated by the trace window");

    const double dt = trace.times[1] - trace.times[0];
    const double period = parabolic_peak(trace.times[peak], dt, p[peak - 1],
                                         p[peak], p[peak + 1]);
    if (period <= 0.0)
        throw no_oscillation_error("measure_oscillation_period: nonpositive period");
    return {period, std::numbers::pi / period};
}

} // namespace tcqed
