#include "qevent/analytic_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace qevent::analytic {

namespace {

// Factor of the per-spin bracket alpha beta^* + alpha^* beta, optionally with
// the real-clock damping s applied to the first (s_first) or second term.
cplx bracket(const QubitState& e, double s_first, double s_second) {
    const cplx ab = e.up() * std::conj(e.down());
    return ab * s_first + std::conj(ab) * s_second;
}

void require_uniform(const ExperimentConfig& cfg, const char* who) {
    if (!cfg.uniform_coupling()) {
        throw std::invalid_argument(std::string(who) + ": the uniform-phase form requires equal couplings f_k");
    }
}

// a b^* e^{-i phase} D prod_k [...]_1 + b a^* e^{+i phase} D prod_k [...]_2
double two_term(const ExperimentConfig& cfg, double phase, double common_damping, double factor_damping) {
    const cplx a = cfg.central.up();
    const cplx b = cfg.central.down();
    cplx p1{1.0}, p2{1.0};
    for (const auto& e : cfg.env) {
        p1 *= bracket(e.state, factor_damping, 1.0);
        p2 *= bracket(e.state, 1.0, factor_damping);
    }
    const cplx t1 = a * std::conj(b) * std::polar(1.0, -phase) * common_damping * p1;
    const cplx t2 = b * std::conj(a) * std::polar(1.0, phase) * common_damping * p2;
    return (t1 + t2).real();
}

}  // namespace

ClockParams ClockParams::real(double tau, double T_exp, const PhysicalConstants& k) {
    if (!(tau >= 0)) throw std::domain_error("ClockParams::real: tau must be >= 0");
    return {1.5 * k.planck_time_4_3() * std::pow(tau, 2.0 / 3.0), T_exp};
}

ClockParams ClockParams::for_config(const ExperimentConfig& cfg, const PhysicalConstants& k) {
    return real(cfg.tau, cfg.T_total, k);
}

BranchState final_state_weak_coupling(const ExperimentConfig& cfg) {
    BranchState s{cfg.central.up(), cfg.central.down(), {}, {}, {}};
    s.env_up_branch.reserve(cfg.n_env());
    s.env_down_branch.reserve(cfg.n_env());
    const double split = std::abs(cfg.omega_split());
    std::size_t violations = 0;
    for (const auto& e : cfg.env) {
        const double phi = e.f * cfg.tau;
        const cplx minus = std::polar(1.0, -phi);
        const cplx plus = std::polar(1.0, phi);
        s.env_up_branch.push_back(QubitState::renormalize(e.state.up() * minus, e.state.down() * plus));
        s.env_down_branch.push_back(QubitState::renormalize(e.state.up() * plus, e.state.down() * minus));
        if (!(std::abs(e.f) < kWeakCouplingRatio * split)) ++violations;
    }
    if (violations > 0) {
        s.warnings.push_back("weak coupling violated for " + std::to_string(violations) +
                             " spin(s): f_k >= " + std::to_string(kWeakCouplingRatio) + " |B(gamma1 - gamma2)|/hbar");
    }
    return s;
}

StateVector to_state_vector(const BranchState& s) {
    StateVector up = StateVector::product(QubitState::up_state(), s.env_up_branch);
    StateVector down = StateVector::product(QubitState::down_state(), s.env_down_branch);
    up.amps = s.branch_up_amp * up.amps + s.branch_down_amp * down.amps;
    return up;
}

cplx decoherence_factor_z(const ExperimentConfig& cfg) {
    cplx z{1.0};
    for (const auto& e : cfg.env) {
        const double two_phi = 2.0 * e.f * cfg.tau;
        z *= cplx(std::cos(two_phi), -e.state.population_imbalance() * std::sin(two_phi));
    }
    return z;
}

LogMagnitude decoherence_factor_abs_log(const ExperimentConfig& cfg) {
    double log10_abs = 0.0;
    for (const auto& e : cfg.env) {
        const double two_phi = 2.0 * e.f * cfg.tau;
        const double mag = std::abs(cplx(std::cos(two_phi), e.state.population_imbalance() * std::sin(two_phi)));
        if (mag == 0.0) return LogMagnitude::zero();
        log10_abs += std::log10(mag);
    }
    return LogMagnitude::from_log10(log10_abs);
}

DensityMatrix2 reduced_rho(const ExperimentConfig& cfg) {
    const cplx a = cfg.central.up();
    const cplx b = cfg.central.down();
    const cplx z = decoherence_factor_z(cfg);
    DensityMatrix2 out;
    out.rho(0, 0) = std::norm(a);
    out.rho(1, 1) = std::norm(b);
    out.rho(0, 1) = a * std::conj(b) * z;
    out.rho(1, 0) = std::conj(a) * b * std::conj(z);
    return out;
}

double expectation_M_unitary(const ExperimentConfig& cfg, PhaseConvention phase) {
    if (phase == PhaseConvention::uniform) {
        require_uniform(cfg, "expectation_M_unitary");
        const double N = static_cast<double>(cfg.n_env());
        const double total_phase = cfg.n_env() == 0 ? 0.0 : 2.0 * N * cfg.omega_split() * cfg.T_total;
        return two_term(cfg, total_phase, 1.0, 1.0);
    }
    const double split = cfg.omega_split();
    double total_phase = 0.0;
    for (const auto& e : cfg.env) total_phase += 2.0 * std::sqrt(4.0 * e.f * e.f + split * split) * cfg.tau;
    return two_term(cfg, total_phase, 1.0, 1.0);
}

double realclock_damping_exponent(const ExperimentConfig& cfg, const ClockParams& clock) {
    const double split = cfg.omega_split();
    return 4.0 * static_cast<double>(cfg.n_env()) * split * split * clock.theta;
}

double expectation_M_realclock(const ExperimentConfig& cfg, const ClockParams& clock) {
    if (!(clock.theta >= 0)) throw std::domain_error("expectation_M_realclock: theta must be >= 0");
    require_uniform(cfg, "expectation_M_realclock");
    const double N = static_cast<double>(cfg.n_env());
    const double total_phase = cfg.n_env() == 0 ? 0.0 : 2.0 * N * cfg.omega_split() * clock.T_exp;
    const double common = std::exp(-realclock_damping_exponent(cfg, clock));
    const double factor = std::exp(-16.0 * cfg.omega_central() * cfg.omega_env() * clock.theta);
    return two_term(cfg, total_phase, common, factor);
}

double off_diagonal_damping(double omega_nm, double T, const PhysicalConstants& k) {
    if (!(T >= 0)) throw std::domain_error("off_diagonal_damping: T must be >= 0");
    return std::exp(-(2.0 / 3.0) * omega_nm * omega_nm * k.planck_time_4_3() * std::pow(T, 2.0 / 3.0));
}

Eigen::MatrixXcd apply_clock_damping(const Eigen::MatrixXcd& rho, const Eigen::VectorXd& energies, double T,
                                     const PhysicalConstants& k) {
    if (rho.rows() != rho.cols() || rho.rows() != energies.size()) {
        throw std::invalid_argument("apply_clock_damping: rho must be square and match the energy list");
    }
    Eigen::MatrixXcd out = rho;
    for (Eigen::Index n = 0; n < rho.rows(); ++n)
        for (Eigen::Index m = 0; m < rho.cols(); ++m)
            if (n != m) out(n, m) *= off_diagonal_damping(energies[n] - energies[m], T, k);
    return out;
}

}  // namespace qevent::analytic
