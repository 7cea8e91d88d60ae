#include "tcqed/spectroscopy.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>

#include "tcqed/numerics.hpp"

namespace tcqed {

using complexd = std::complex<double>;

CavityParams CavityParams::homogeneous(int n_cells, double cavity_freq,
                                       double kappa, double g0,
                                       double drive_freq,
                                       double drive_strength) {
    CavityParams p;
    p.cavity_freq = cavity_freq;
    p.kappa = kappa;
    p.coupling_vector = g0 * coupling_pattern_homogeneous(n_cells);
    p.drive_freq = drive_freq;
    p.drive_strength = drive_strength;
    p.validate(2 * n_cells);
    return p;
}

void CavityParams::validate(int n_sites) const {
    // kappa = 0 is allowed for closed-system validation runs; the spectral
    // formulas require kappa > 0 and enforce it themselves.
    if (kappa < 0.0) throw std::invalid_argument("CavityParams: kappa must be >= 0");
    if (coupling_vector.size() != n_sites)
        throw std::invalid_argument("CavityParams: coupling_vector must have length 2N");
    if (drive_strength < 0.0)
        throw std::invalid_argument("CavityParams: drive strength must be >= 0");
}

Eigen::VectorXd coupling_pattern_homogeneous(int n_cells) {
    return Eigen::VectorXd::Ones(2 * n_cells);
}

Eigen::VectorXd coupling_pattern_alternating_sign_8() {
    Eigen::VectorXd g(8);
    g << -1, 1, 1, 1, -1, 1, 1, 1;
    return g;
}

namespace {

// Qubit-sector response sum g^T B^{-1} g at drive omega_l.  The drive
// strength cancels in the linearized limit and never enters here.
complexd qubit_response(const ArrayParams& array, const Eigen::VectorXd& g,
                        double omega_l) {
    const int n = array.n_sites();
    const double dq = array.qubit_freq - omega_l;
    const Eigen::MatrixXd ssh =
        build_hamiltonian(array) -
        array.qubit_freq * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXcd b = ssh.cast<complexd>();
    b.diagonal().array() += complexd(dq, 0.0);
    b.diagonal() -= complexd(0.0, 0.5) * array.qubit_decays.cast<complexd>();

    const Eigen::VectorXcd rhs = g.cast<complexd>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(b);
    const Eigen::VectorXcd x = lu.solve(rhs);
    const double rel_residual = (b * x - rhs).norm() / std::max(rhs.norm(), 1e-300);
    if (!x.allFinite() || rel_residual > 1e-8)
        throw singularity_error(
            "steady_state_reflection: qubit response matrix is singular at this "
            "drive (real resonance with zero decays); give the qubits a nonzero gamma");
    return rhs.dot(x);  // g real, so this is sum_nm g_n g_m [B^{-1}]_nm
}

} // namespace

ReflectionPoint steady_state_reflection(const ArrayParams& array,
                                        const CavityParams& cavity) {
    array.validate();
    cavity.validate(array.n_sites());
    if (cavity.kappa <= 0.0)
        throw std::invalid_argument("steady_state_reflection: kappa must be > 0");
    const double dc = cavity.cavity_freq - cavity.drive_freq;
    const complexd s =
        qubit_response(array, cavity.coupling_vector, cavity.drive_freq);
    const complexd denom =
        complexd(cavity.kappa / 2.0, 0.0) + complexd(0.0, 1.0) * dc -
        complexd(0.0, 1.0) * s;
    const double amp = std::abs(complexd(cavity.kappa / 2.0, 0.0) / denom);
    const double reflection = 1.0 - amp * amp;
    return {reflection, 1.0 - reflection};
}

SpectralMap reflection_map(const ArrayParams& array_template,
                           const CavityParams& cavity_template,
                           const Eigen::VectorXd& phi_grid,
                           const Eigen::VectorXd& drive_grid, int jobs) {
    SpectralMap map;
    map.phi_grid = phi_grid;
    map.drive_grid = drive_grid;
    map.reflection.resize(phi_grid.size(), drive_grid.size());

    const std::size_t total =
        static_cast<std::size_t>(phi_grid.size()) * drive_grid.size();
    parallel_for(total, jobs, [&](std::size_t idx) {
        const Eigen::Index row = static_cast<Eigen::Index>(idx / drive_grid.size());
        const Eigen::Index col = static_cast<Eigen::Index>(idx % drive_grid.size());
        ArrayParams array = array_template;
        array.phi = phi_grid[row];
        CavityParams cavity = cavity_template;
        cavity.drive_freq = drive_grid[col];
        map.reflection(row, col) = steady_state_reflection(array, cavity).reflection;
    });
    return map;
}

Eigen::MatrixXd eigenenergies_vs_phi(const ArrayParams& array_template,
                                     const Eigen::VectorXd& phi_grid) {
    Eigen::MatrixXd energies(phi_grid.size(), array_template.n_sites());
    for (Eigen::Index r = 0; r < phi_grid.size(); ++r) {
        ArrayParams array = array_template;
        array.phi = phi_grid[r];
        const auto modes = eigensystem(array);
        for (int j = 0; j < array.n_sites(); ++j)
            energies(r, j) = modes[j].energy;
    }
    return energies;
}

ArrayParams disorder_sample(const ArrayParams& array, double strength,
                            std::uint64_t seed) {
    if (strength < 0.0)
        throw std::invalid_argument("disorder_sample: strength must be >= 0");
    ArrayParams out = array;
    DeterministicRng rng(seed);
    for (int i = 0; i < array.n_sites(); ++i)
        out.frequency_offsets[i] = rng.symmetric(strength);
    return out;
}

RabiPeaks find_rabi_peaks(const Eigen::VectorXd& drive_grid,
                          const Eigen::VectorXd& transmission, double phi,
                          double g0, double kappa, double gamma) {
    if (drive_grid.size() != transmission.size() || drive_grid.size() < 3)
        throw std::invalid_argument("find_rabi_peaks: need matching grids with >= 3 points");
    RabiPeaks out;
    out.resolvable_analytic =
        2.0 * std::sqrt(2.0 * std::cos(phi)) * g0 > (kappa + gamma) / 2.0;

    const auto maxima = local_maxima(transmission);
    const double dx = drive_grid[1] - drive_grid[0];
    // Two dominant maxima by height, refined on the 3-point parabola.
    std::vector<int> order(maxima);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return transmission[a] > transmission[b]; });
    if (order.size() > 2) order.resize(2);
    for (int i : order)
        out.positions.push_back(parabolic_peak(drive_grid[i], dx,
                                               transmission[i - 1],
                                               transmission[i],
                                               transmission[i + 1]));
    std::sort(out.positions.begin(), out.positions.end());
    if (out.positions.size() == 2) {
        out.splitting = out.positions[1] - out.positions[0];
        out.resolvable = out.splitting > dx;
    }
    return out;
}

} // namespace tcqed
