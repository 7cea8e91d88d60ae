#include "tcqed/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>

#include "tcqed/numerics.hpp"

namespace tcqed {

using complexd = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

namespace {

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Operators for the kron(photon, qubit_1, ..., qubit_2N) product space,
// qubit basis |g>, |e|>.
struct SystemOperators {
    MatrixXcd a;                     // photon annihilation
    std::vector<MatrixXcd> sigma_m;  // per-qubit lowering
    int dim{0};
};

SystemOperators build_operators(const TruncatedSystem& sys) {
    const int dp = sys.photon_cutoff + 1;
    const int nq = sys.array.n_sites();

    MatrixXcd a_ph = MatrixXcd::Zero(dp, dp);
    for (int n = 1; n < dp; ++n) a_ph(n - 1, n) = std::sqrt(double(n));
    MatrixXcd sm2 = MatrixXcd::Zero(2, 2);
    sm2(0, 1) = 1.0;  // |g><e|

    SystemOperators ops;
    ops.dim = sys.dimension();
    const MatrixXcd id2 = MatrixXcd::Identity(2, 2);

    MatrixXcd acc = a_ph;
    for (int q = 0; q < nq; ++q) acc = kron(acc, id2);
    ops.a = acc;

    for (int q = 0; q < nq; ++q) {
        MatrixXcd op = MatrixXcd::Identity(dp, dp);
        for (int r = 0; r < nq; ++r) op = kron(op, r == q ? sm2 : id2);
        ops.sigma_m.push_back(op);
    }
    return ops;
}

// Hamiltonian in the frame rotating at the drive frequency:
//   H = Dc a^t a + sum (Dq + eps_n) P_n + sum g_n (s_n^+ a + a^t s_n^-)
//       + SSH bonds + i eta (a^t - a).
MatrixXcd build_rotating_hamiltonian(const TruncatedSystem& sys,
                                     const SystemOperators& ops) {
    const double dc = sys.cavity.cavity_freq - sys.cavity.drive_freq;
    const double dq = sys.array.qubit_freq - sys.cavity.drive_freq;
    const auto [t1, t2] = couplings_from_phi(sys.array.t0, sys.array.phi);
    const int nq = sys.array.n_sites();
    const complexd i_unit{0.0, 1.0};

    MatrixXcd h = dc * (ops.a.adjoint() * ops.a);
    for (int n = 0; n < nq; ++n) {
        const MatrixXcd sp = ops.sigma_m[n].adjoint();
        h += (dq + sys.array.frequency_offsets[n]) * (sp * ops.sigma_m[n]);
        h += sys.cavity.coupling_vector[n] *
             (sp * ops.a + ops.a.adjoint() * ops.sigma_m[n]);
    }
    for (int b = 0; b + 1 < nq; ++b) {
        const double t = (b % 2 == 0) ? t1 : t2;
        h += t * (ops.sigma_m[b].adjoint() * ops.sigma_m[b + 1] +
                  ops.sigma_m[b + 1].adjoint() * ops.sigma_m[b]);
    }
    h += i_unit * sys.cavity.drive_strength * (ops.a.adjoint() - ops.a);
    return h;
}

// rho' = -i[H, rho] + kappa D[a] rho + sum gamma_n D[sigma_n^-] rho.
MatrixXcd apply_liouvillian(const TruncatedSystem& sys,
                            const SystemOperators& ops, const MatrixXcd& h,
                            const MatrixXcd& rho) {
    const complexd i_unit{0.0, 1.0};
    MatrixXcd out = -i_unit * (h * rho - rho * h);
    auto dissipate = [&](const MatrixXcd& c, double rate) {
        if (rate == 0.0) return;
        const MatrixXcd cdc = c.adjoint() * c;
        out += rate * (c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc));
    };
    dissipate(ops.a, sys.cavity.kappa);
    for (int n = 0; n < sys.array.n_sites(); ++n)
        dissipate(ops.sigma_m[n], sys.array.qubit_decays[n]);
    return out;
}

// Column-major vectorized Liouvillian: vec(A X B) = (B^T kron A) vec(X).
MatrixXcd vectorized_liouvillian(const TruncatedSystem& sys,
                                 const SystemOperators& ops, const MatrixXcd& h) {
    const int d = ops.dim;
    const MatrixXcd id = MatrixXcd::Identity(d, d);
    const complexd i_unit{0.0, 1.0};
    MatrixXcd m = -i_unit * (kron(id, h) - kron(h.transpose(), id));
    auto dissipate = [&](const MatrixXcd& c, double rate) {
        if (rate == 0.0) return;
        const MatrixXcd cdc = c.adjoint() * c;
        m += rate * (kron(c.conjugate(), c) - 0.5 * kron(id, cdc) -
                     0.5 * kron(cdc.transpose(), id));
    };
    dissipate(ops.a, sys.cavity.kappa);
    for (int n = 0; n < sys.array.n_sites(); ++n)
        dissipate(ops.sigma_m[n], sys.array.qubit_decays[n]);
    return m;
}

SteadyStateResult solve_once(const TruncatedSystem& sys) {
    const auto ops = build_operators(sys);
    const MatrixXcd h = build_rotating_hamiltonian(sys, ops);
    const int d = ops.dim;

    MatrixXcd m = vectorized_liouvillian(sys, ops, h);
    VectorXcd rhs = VectorXcd::Zero(d * d);
    // Trace constraint replaces the first row.
    m.row(0).setZero();
    for (int i = 0; i < d; ++i) m(0, i * d + i) = 1.0;
    rhs[0] = 1.0;

    const VectorXcd rho_vec = m.partialPivLu().solve(rhs);
    MatrixXcd rho(d, d);
    for (int j = 0; j < d; ++j) rho.col(j) = rho_vec.segment(j * d, d);
    rho = 0.5 * (rho + rho.adjoint().eval());

    const double residual = apply_liouvillian(sys, ops, h, rho).cwiseAbs().sum();
    if (residual > 1e-9)
        throw convergence_error(
            "lindblad_steady_state: stationarity residual " +
            std::to_string(residual) + " exceeds 1e-9");

    SteadyStateResult out;
    out.a_expectation = (ops.a * rho).trace();
    const double eta = sys.cavity.drive_strength;
    if (eta <= 0.0)
        throw std::invalid_argument(
            "lindblad_steady_state: needs a nonzero drive strength eta");
    const double amp = std::abs(sys.cavity.kappa * out.a_expectation / (2.0 * eta));
    out.reflection = 1.0 - amp * amp;
    out.transmission = amp * amp;
    return out;
}

} // namespace

int TruncatedSystem::dimension() const {
    return (photon_cutoff + 1) * (1 << array.n_sites());
}

void TruncatedSystem::validate() const {
    array.validate();
    cavity.validate(array.n_sites());
    if (array.n_cells > 2)
        throw unsupported_regime_error(
            "TruncatedSystem: the oracle is restricted to N <= 2 unit cells");
    if (photon_cutoff < 1)
        throw std::invalid_argument("TruncatedSystem: photon_cutoff must be >= 1");
    if (dimension() > 48)
        throw std::invalid_argument(
            "TruncatedSystem: Hilbert dimension exceeds the cap of 48");
}

SteadyStateResult lindblad_steady_state(const TruncatedSystem& sys,
                                        bool check_cutoff) {
    sys.validate();
    if (sys.cavity.kappa <= 0.0)
        throw std::invalid_argument("lindblad_steady_state: kappa must be > 0");
    if (sys.cavity.drive_strength > sys.cavity.kappa / 50.0)
        throw std::domain_error(
            "lindblad_steady_state: eta must stay <= kappa/50 for the "
            "low-excitation limit");
    SteadyStateResult result = solve_once(sys);
    if (check_cutoff) {
        TruncatedSystem doubled = sys;  // internal check may exceed the cap
        doubled.photon_cutoff = 2 * sys.photon_cutoff;
        const SteadyStateResult refined = solve_once(doubled);
        if (std::abs(refined.reflection - result.reflection) > 1e-4)
            throw convergence_error(
                "lindblad_steady_state: reflection shifts by more than 1e-4 "
                "when the photon cutoff doubles; raise the cutoff");
    }
    return result;
}

LindbladTrace lindblad_evolve(const TruncatedSystem& sys,
                              const Eigen::MatrixXcd& rho0,
                              const Eigen::VectorXd& t_grid) {
    sys.validate();
    const auto ops = build_operators(sys);
    const MatrixXcd h = build_rotating_hamiltonian(sys, ops);
    const int d = ops.dim;
    if (rho0.rows() != d || rho0.cols() != d)
        throw std::invalid_argument("lindblad_evolve: rho0 dimension mismatch");
    if (t_grid.size() < 1)
        throw std::invalid_argument("lindblad_evolve: empty time grid");

    const int nq = sys.array.n_sites();
    LindbladTrace trace;
    trace.times = t_grid;
    trace.qubit_populations.resize(t_grid.size(), nq);
    trace.photon_number.resize(t_grid.size());
    trace.trace_real.resize(t_grid.size());
    trace.min_eigenvalue.resize(t_grid.size());

    std::vector<MatrixXcd> number_ops;
    for (int n = 0; n < nq; ++n)
        number_ops.push_back(ops.sigma_m[n].adjoint() * ops.sigma_m[n]);
    const MatrixXcd photon_number_op = ops.a.adjoint() * ops.a;

    // Scale for the Taylor substeps of exp(L dt).
    const double h_scale = h.cwiseAbs().rowwise().sum().maxCoeff();
    const double rate_scale =
        sys.cavity.kappa + sys.array.qubit_decays.maxCoeff();
    const double gen_scale = 2.0 * h_scale + 2.0 * rate_scale;

    auto step = [&](MatrixXcd& rho, double dt) {
        const int n_sub =
            std::max(1, static_cast<int>(std::ceil(dt * gen_scale)));
        const double h_sub = dt / n_sub;
        for (int s = 0; s < n_sub; ++s) {
            MatrixXcd term = rho;
            MatrixXcd acc = rho;
            const double rho_scale = rho.norm();
            for (int m = 1; m <= 64; ++m) {
                term = apply_liouvillian(sys, ops, h, term) * (h_sub / m);
                acc += term;
                if (term.norm() <= 1e-15 * std::max(rho_scale, 1e-300)) break;
                if (m == 64)
                    throw convergence_error(
                        "lindblad_evolve: propagator series did not converge");
            }
            rho = acc;
        }
    };

    MatrixXcd rho = rho0;
    double t_prev = 0.0;
    for (Eigen::Index it = 0; it < t_grid.size(); ++it) {
        const double dt = t_grid[it] - t_prev;
        if (dt < 0.0)
            throw std::invalid_argument("lindblad_evolve: time grid must be nondecreasing");
        if (dt > 0.0) step(rho, dt);
        t_prev = t_grid[it];

        for (int n = 0; n < nq; ++n)
            trace.qubit_populations(it, n) = (number_ops[n] * rho).trace().real();
        trace.photon_number[it] = (photon_number_op * rho).trace().real();
        trace.trace_real[it] = rho.trace().real();
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (rho + rho.adjoint().eval()));
        trace.min_eigenvalue[it] = es.eigenvalues().minCoeff();
    }
    return trace;
}

Eigen::MatrixXcd ground_state_density_matrix(const TruncatedSystem& sys) {
    const int d = sys.dimension();
    MatrixXcd rho = MatrixXcd::Zero(d, d);
    rho(0, 0) = 1.0;
    return rho;
}

Eigen::MatrixXcd single_excitation_density_matrix(const TruncatedSystem& sys,
                                                  int site) {
    const int nq = sys.array.n_sites();
    if (site < 0 || site >= nq)
        throw std::invalid_argument("single_excitation_density_matrix: site out of range");
    // kron ordering: photon index is the slowest, qubit 0 the next, the last
    // qubit flips fastest; |e> is the second basis state of each qubit.
    const int d = sys.dimension();
    const int idx = 1 << (nq - 1 - site);
    MatrixXcd rho = MatrixXcd::Zero(d, d);
    rho(idx, idx) = 1.0;
    return rho;
}

} // namespace tcqed
