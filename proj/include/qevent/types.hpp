// types.hpp: value types shared by every engine: spin-1/2 states, the reduced
// 2x2 density matrix and the experiment configuration.
//
// Unit convention: dynamics use hbar = 1. Couplings f_k are angular frequencies
// (rad/s); Zeeman terms enter as gamma * B / hbar. Spin operators are Pauli
// matrices (eigenvalues +-1).

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qevent/constants.hpp"

namespace qevent {

using cplx = std::complex<double>;

// Normalized spin-1/2 amplitudes in the sigma_z basis (up = +1 eigenstate).
class QubitState {
public:
    static constexpr double kNormTolerance = 1e-12;

    // Basis state |up>.
    QubitState() = default;
    // Throws std::invalid_argument unless |up|^2 + |down|^2 = 1 within kNormTolerance.
    QubitState(cplx up, cplx down);

    // Escape hatch for intermediate math: rescales any nonzero pair to unit norm.
    static QubitState renormalize(cplx up, cplx down);

    static QubitState up_state() { return {}; }
    static QubitState down_state() { return {cplx{0.0}, cplx{1.0}}; }
    // cos(polar/2)|up> + e^{i azimuth} sin(polar/2)|down>
    static QubitState bloch(double polar, double azimuth);

    [[nodiscard]] cplx up() const { return up_; }
    [[nodiscard]] cplx down() const { return down_; }

    // |up|^2 - |down|^2, i.e. <sigma_z>
    [[nodiscard]] double population_imbalance() const { return std::norm(up_) - std::norm(down_); }
    // up down^* + up^* down = 2 Re(up down^*), i.e. <sigma_x>
    [[nodiscard]] double coherence_sum() const { return 2.0 * std::real(up_ * std::conj(down_)); }

    friend bool operator==(const QubitState&, const QubitState&) = default;

private:
    cplx up_{1.0};
    cplx down_{0.0};
};

// Reduced state of the central spin; rows/cols ordered (up, down).
struct DensityMatrix2 {
    Eigen::Matrix2cd rho{Eigen::Matrix2cd::Zero()};

    static DensityMatrix2 pure(const QubitState& s);

    [[nodiscard]] cplx operator()(int i, int j) const { return rho(i, j); }
    [[nodiscard]] cplx trace() const { return rho.trace(); }
    [[nodiscard]] double hermiticity_defect() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
    // Eigenvalues of the Hermitian part, ascending.
    [[nodiscard]] Eigen::Vector2d eigenvalues() const;
};

// One environment spin: its initial state and its coupling to the central spin.
struct EnvSpin {
    QubitState state;
    double f{0.0};  // rad/s

    friend bool operator==(const EnvSpin&, const EnvSpin&) = default;
};

struct ExperimentConfig {
    QubitState central;
    std::vector<EnvSpin> env;  // flight order
    double B{1.0};             // T
    double gamma1{0.0};        // J/T, central spin
    double gamma2{0.0};        // J/T, environment spins
    double tau{1.0};           // s, flight time per environment spin
    double T_total{0.0};       // s, duration of the experiment
    double m{1.0};             // kg, environment particle mass
    double d{1.0};             // m, impact parameter

    [[nodiscard]] std::size_t n_env() const { return env.size(); }

    // Angular frequencies under hbar = 1.
    [[nodiscard]] double omega_central(const PhysicalConstants& k = codata()) const { return gamma1 * B / k.hbar; }
    [[nodiscard]] double omega_env(const PhysicalConstants& k = codata()) const { return gamma2 * B / k.hbar; }
    // B (gamma1 - gamma2) / hbar
    [[nodiscard]] double omega_split(const PhysicalConstants& k = codata()) const {
        return (gamma1 - gamma2) * B / k.hbar;
    }

    // True when every f_k equals the first one (vacuously true for N = 0).
    [[nodiscard]] bool uniform_coupling() const;

    // Throws std::invalid_argument naming the first violated invariant:
    // tau > 0, T_total >= N tau, m > 0, d > 0, finite numbers.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Builds gamma1/gamma2 so that gamma*B/hbar equal the requested angular
// frequencies; T_total defaults to N * tau. Mostly for tests and sweeps.
ExperimentConfig make_config(QubitState central, std::vector<EnvSpin> env, double omega_central,
                             double omega_env, double tau);

}  // namespace qevent
