// exact_engine.hpp: brute-force unitary evolution of the central spin and its
// environment, used as the oracle for every closed form in analytic_engine.
//
// Each environment spin interacts with the central spin only during its own
// flight window of length tau, in flight order, through
//   H_k = gamma1 B sz(x)1 + gamma2 B 1(x)sz + f_k (sx sx + sy sy + sz sz)
// (hbar = 1, Pauli matrices). In the interaction picture the Zeeman phases
// exp(+i H_Zeeman tau) are stripped after every window.

#pragma once

#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

#include "qevent/state_vector.hpp"
#include "qevent/types.hpp"

namespace qevent::exact {

enum class Coupling {
    heisenberg,  // f (sx sx + sy sy + sz sz)
    dephasing,   // f sz sz only; the weak-coupling product state is then exact
};

struct EvolveOptions {
    bool interaction_picture{true};
    Coupling coupling{Coupling::heisenberg};
    std::size_t n_cap{12};
};

// Thrown when a request would exceed the dense-simulation cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 4x4 operator on (central (x) env_k); basis index = 2*central_bit + env_bit.
struct PairHamiltonian {
    Eigen::Matrix4cd matrix{Eigen::Matrix4cd::Zero()};
};

PairHamiltonian build_pair_hamiltonian(const ExperimentConfig& cfg, std::size_t k, bool include_zeeman,
                                       Coupling coupling = Coupling::heisenberg);

// exp(-i H tau) via Hermitian diagonalization.
Eigen::Matrix4cd pair_propagator(const PairHamiltonian& h, double tau);

// Applies a 4x4 operator to the (central, env k) pair; k is 1-based (bit index).
void apply_pair(StateVector& psi, std::size_t k, const Eigen::Matrix4cd& u);

StateVector evolve_sequential(const ExperimentConfig& cfg, const EvolveOptions& opts = {});
inline StateVector evolve_sequential(const ExperimentConfig& cfg, bool interaction_picture) {
    return evolve_sequential(cfg, EvolveOptions{.interaction_picture = interaction_picture});
}

DensityMatrix2 partial_trace_env(const StateVector& psi);

// <psi| sx (x) sx (x) ... (x) sx |psi>. Throws std::logic_error if the
// imaginary residue exceeds 1e-10 (the observable is Hermitian).
double expectation_global_M(const StateVector& psi);

// Mixture expectation of M after a sigma_z collapse of the central spin:
// sum over the two branches of p_branch <M>_branch. Uses the dense evolved
// state up to the cap and the branch product form beyond it.
double expectation_collapsed_M(const ExperimentConfig& cfg, const EvolveOptions& opts = {});

}  // namespace qevent::exact
