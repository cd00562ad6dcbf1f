#include "qevent/exact_engine.hpp"

#include <cmath>
#include <string>

namespace qevent {

StateVector StateVector::product(const QubitState& central, const std::vector<QubitState>& env) {
    StateVector psi;
    psi.n_env = env.size();
    psi.amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(psi.dim()));
    psi.amps[0] = central.up();
    psi.amps[1] = central.down();
    std::size_t filled = 2;
    // Env spin k occupies bit k: doubling the filled prefix appends it.
    for (const auto& s : env) {
        for (std::size_t i = 0; i < filled; ++i) {
            const cplx v = psi.amps[static_cast<Eigen::Index>(i)];
            psi.amps[static_cast<Eigen::Index>(i)] = v * s.up();
            psi.amps[static_cast<Eigen::Index>(i + filled)] = v * s.down();
        }
        filled *= 2;
    }
    return psi;
}

namespace exact {

namespace {

const Eigen::Matrix2cd& pauli_x() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    return m;
}
const Eigen::Matrix2cd& pauli_y() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
    return m;
}
const Eigen::Matrix2cd& pauli_z() {
    static const Eigen::Matrix2cd m = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    return m;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap) {
        throw ResourceError("exact engine: N = " + std::to_string(n) + " exceeds the dense-simulation cap of " +
                            std::to_string(cap) + " environment spins");
    }
}

}  // namespace

PairHamiltonian build_pair_hamiltonian(const ExperimentConfig& cfg, std::size_t k, bool include_zeeman,
                                       Coupling coupling) {
    if (k >= cfg.n_env()) {
        throw std::out_of_range("build_pair_hamiltonian: k = " + std::to_string(k) + " but N = " +
                                std::to_string(cfg.n_env()));
    }
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    PairHamiltonian h;
    if (include_zeeman) {
        h.matrix += cfg.omega_central() * kron(pauli_z(), id) + cfg.omega_env() * kron(id, pauli_z());
    }
    const double f = cfg.env[k].f;
    h.matrix += f * kron(pauli_z(), pauli_z());
    if (coupling == Coupling::heisenberg) {
        h.matrix += f * (kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y()));
    }
    return h;
}

Eigen::Matrix4cd pair_propagator(const PairHamiltonian& h, double tau) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h.matrix);
    const Eigen::Vector4d lambda = es.eigenvalues();
    Eigen::Vector4cd phases;
    for (int i = 0; i < 4; ++i) phases[i] = std::polar(1.0, -lambda[i] * tau);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

void apply_pair(StateVector& psi, std::size_t k, const Eigen::Matrix4cd& u) {
    const std::size_t env_bit = std::size_t{1} << k;
    const std::size_t dim = psi.dim();
    Eigen::Vector4cd local;
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & (env_bit | 1u)) continue;
        const Eigen::Index idx[4] = {static_cast<Eigen::Index>(base), static_cast<Eigen::Index>(base | env_bit),
                                     static_cast<Eigen::Index>(base | 1u),
                                     static_cast<Eigen::Index>(base | env_bit | 1u)};
        for (int i = 0; i < 4; ++i) local[i] = psi.amps[idx[i]];
        local = u * local;
        for (int i = 0; i < 4; ++i) psi.amps[idx[i]] = local[i];
    }
}

StateVector evolve_sequential(const ExperimentConfig& cfg, const EvolveOptions& opts) {
    check_cap(cfg.n_env(), opts.n_cap);
    std::vector<QubitState> env;
    env.reserve(cfg.n_env());
    for (const auto& e : cfg.env) env.push_back(e.state);
    StateVector psi = StateVector::product(cfg.central, env);

    for (std::size_t k = 0; k < cfg.n_env(); ++k) {
        Eigen::Matrix4cd u = pair_propagator(build_pair_hamiltonian(cfg, k, true, opts.coupling), cfg.tau);
        if (opts.interaction_picture) {
            // Zeeman part is diagonal; its inverse propagator is a diagonal phase.
            const Eigen::Vector4cd zeeman =
                build_pair_hamiltonian(cfg, k, true, opts.coupling).matrix.diagonal() -
                build_pair_hamiltonian(cfg, k, false, opts.coupling).matrix.diagonal();
            Eigen::Vector4cd undo;
            for (int i = 0; i < 4; ++i) undo[i] = std::polar(1.0, zeeman[i].real() * cfg.tau);
            u = undo.asDiagonal() * u;
        }
        apply_pair(psi, k + 1, u);
    }
    return psi;
}

DensityMatrix2 partial_trace_env(const StateVector& psi) {
    DensityMatrix2 out;
    const std::size_t dim = psi.dim();
    for (std::size_t e = 0; e < dim; e += 2) {
        const cplx up = psi.amps[static_cast<Eigen::Index>(e)];
        const cplx down = psi.amps[static_cast<Eigen::Index>(e + 1)];
        out.rho(0, 0) += std::norm(up);
        out.rho(0, 1) += up * std::conj(down);
        out.rho(1, 1) += std::norm(down);
    }
    out.rho(1, 0) = std::conj(out.rho(0, 1));
    return out;
}

double expectation_global_M(const StateVector& psi) {
    const std::size_t mask = psi.dim() - 1;
    cplx acc{0.0};
    for (std::size_t i = 0; i <= mask; ++i) {
        acc += std::conj(psi.amps[static_cast<Eigen::Index>(i)]) * psi.amps[static_cast<Eigen::Index>(i ^ mask)];
    }
    if (std::abs(acc.imag()) > 1e-10) {
        throw std::logic_error("expectation_global_M: imaginary residue " + std::to_string(acc.imag()));
    }
    return acc.real();
}

double expectation_collapsed_M(const ExperimentConfig& cfg, const EvolveOptions& opts) {
    if (cfg.n_env() <= opts.n_cap) {
        const StateVector psi = evolve_sequential(cfg, opts);
        double total = 0.0;
        for (std::size_t central_bit = 0; central_bit < 2; ++central_bit) {
            StateVector branch = psi;
            for (std::size_t i = 0; i < branch.dim(); ++i) {
                if ((i & 1u) != central_bit) branch.amps[static_cast<Eigen::Index>(i)] = 0.0;
            }
            const double p = branch.amps.squaredNorm();
            if (p == 0.0) continue;
            branch.amps /= std::sqrt(p);
            total += p * expectation_global_M(branch);
        }
        return total;
    }
    // Each weak-coupling branch is a product state |s> (x) prod_k |E_k^s>, so
    // <M>_branch = <s|sx|s> prod_k <E_k^s|sx|E_k^s>, with <s|sx|s> = 0.
    const cplx a = cfg.central.up();
    const cplx b = cfg.central.down();
    double total = 0.0;
    for (int s = 0; s < 2; ++s) {
        const double p = std::norm(s == 0 ? a : b);
        const double central_sx = 0.0;
        double env_product = 1.0;
        for (const auto& e : cfg.env) {
            const double phi = (s == 0 ? 1.0 : -1.0) * e.f * cfg.tau;
            const cplx u = e.state.up() * std::polar(1.0, -phi);
            const cplx v = e.state.down() * std::polar(1.0, phi);
            env_product *= 2.0 * std::real(std::conj(u) * v);
        }
        total += p * central_sx * env_product;
    }
    return total;
}

}  // namespace exact
}  // namespace qevent
