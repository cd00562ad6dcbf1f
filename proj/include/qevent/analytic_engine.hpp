// analytic_engine.hpp: closed-form weak-coupling results, valid at any N
// because they are products over environment spins.
//
// Phase convention: the coupling phase of spin k is phi_k = f_k tau (coupling
// constant over the flight) and branches evolve as exp(-i H t). The central-up
// branch carries alpha_k e^{-i phi_k}|up> + beta_k e^{+i phi_k}|down>, and
//   z = prod_k [cos(2 phi_k) - i (|alpha_k|^2 - |beta_k|^2) sin(2 phi_k)]
// is the factor multiplying a b^* in rho_{up,down}. This matches the exact
// engine; |z| is independent of the sign choice.

#pragma once

#include <string>
#include <vector>

#include "qevent/constants.hpp"
#include "qevent/log_magnitude.hpp"
#include "qevent/state_vector.hpp"
#include "qevent/types.hpp"

namespace qevent::analytic {

struct BranchState {
    cplx branch_up_amp;                    // a
    cplx branch_down_amp;                  // b
    std::vector<QubitState> env_up_branch;    // env states correlated with central up
    std::vector<QubitState> env_down_branch;  // ... with central down
    std::vector<std::string> warnings;        // weak-coupling validity, etc.
};

// Real-clock parameters: theta = (3/2) T_P^{4/3} tau^{2/3} (s^2), T_exp (s).
struct ClockParams {
    double theta{0.0};
    double T_exp{0.0};

    static ClockParams ideal(double T_exp) { return {0.0, T_exp}; }
    static ClockParams real(double tau, double T_exp, const PhysicalConstants& k = codata());
    // Real clock for cfg.tau over cfg.T_total.
    static ClockParams for_config(const ExperimentConfig& cfg, const PhysicalConstants& k = codata());
};

// Ratio f_k / |B(gamma1 - gamma2)| above which the weak-coupling warning fires.
inline constexpr double kWeakCouplingRatio = 0.1;

BranchState final_state_weak_coupling(const ExperimentConfig& cfg);
StateVector to_state_vector(const BranchState& s);

cplx decoherence_factor_z(const ExperimentConfig& cfg);
// |z| in log form, for N far beyond double range.
LogMagnitude decoherence_factor_abs_log(const ExperimentConfig& cfg);

DensityMatrix2 reduced_rho(const ExperimentConfig& cfg);

enum class PhaseConvention {
    per_spin,  // prod_k e^{-2i Omega_k tau}, Omega_k = sqrt(4 f_k^2 + (B dgamma)^2)
    uniform,   // e^{-2i N Omega T}, Omega = B dgamma; requires uniform f_k
};

// a b^* prod_k [alpha_k beta_k^* + alpha_k^* beta_k] (phase) + c.c.
// N = 0 gives 2 Re(a b^*) (empty product, no phase).
double expectation_M_unitary(const ExperimentConfig& cfg, PhaseConvention phase = PhaseConvention::per_spin);

// Two-term real-clock expression with common damping e^{-4 N Omega^2 theta}
// and the asymmetric per-factor damping e^{-16 B^2 gamma1 gamma2 theta}.
// Uses PhaseConvention::uniform with T = clock.T_exp; theta = 0 is exactly
// expectation_M_unitary(uniform) when clock.T_exp == cfg.T_total.
double expectation_M_realclock(const ExperimentConfig& cfg, const ClockParams& clock);

// 4 N Omega^2 theta, the exponent of the common real-clock damping factor.
double realclock_damping_exponent(const ExperimentConfig& cfg, const ClockParams& clock);

// exp(-(2/3) omega^2 T_P^{4/3} T^{2/3}); T < 0 throws std::domain_error.
double off_diagonal_damping(double omega_nm, double T, const PhysicalConstants& k = codata());

// Damps every off-diagonal rho_nm by off_diagonal_damping(E_n - E_m, T).
// energies are the eigenvalues (rad/s) of the basis rho is written in.
Eigen::MatrixXcd apply_clock_damping(const Eigen::MatrixXcd& rho, const Eigen::VectorXd& energies, double T,
                                     const PhysicalConstants& k = codata());

}  // namespace qevent::analytic
