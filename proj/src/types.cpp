#include "qevent/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qevent {

QubitState::QubitState(cplx up, cplx down) : up_(up), down_(down) {
    const double n = std::norm(up) + std::norm(down);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
        throw std::invalid_argument("QubitState: |up|^2 + |down|^2 = " + std::to_string(n) + ", expected 1");
    }
}

QubitState QubitState::renormalize(cplx up, cplx down) {
    const double n = std::sqrt(std::norm(up) + std::norm(down));
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("QubitState::renormalize: zero or non-finite vector");
    QubitState s;
    s.up_ = up / n;
    s.down_ = down / n;
    return s;
}

QubitState QubitState::bloch(double polar, double azimuth) {
    return renormalize(std::cos(polar / 2), std::polar(std::sin(polar / 2), azimuth));
}

DensityMatrix2 DensityMatrix2::pure(const QubitState& s) {
    Eigen::Vector2cd v(s.up(), s.down());
    return {v * v.adjoint()};
}

Eigen::Vector2d DensityMatrix2::eigenvalues() const {
    const Eigen::Matrix2cd h = 0.5 * (rho + rho.adjoint());
    return Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

bool ExperimentConfig::uniform_coupling() const {
    for (const auto& e : env) {
        if (e.f != env.front().f) return false;
    }
    return true;
}

void ExperimentConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("ExperimentConfig: ") + what);
    };
    require(std::isfinite(B) && std::isfinite(gamma1) && std::isfinite(gamma2), "B, gamma1, gamma2 must be finite");
    require(std::isfinite(tau) && tau > 0, "tau must be > 0");
    require(std::isfinite(m) && m > 0, "m must be > 0");
    require(std::isfinite(d) && d > 0, "d must be > 0");
    const double flight = static_cast<double>(env.size()) * tau;
    require(std::isfinite(T_total) && T_total >= flight * (1.0 - 1e-12), "T_total must be >= N * tau");
    for (const auto& e : env) require(std::isfinite(e.f), "every coupling f_k must be finite");
}

ExperimentConfig make_config(QubitState central, std::vector<EnvSpin> env, double omega_central,
                             double omega_env, double tau) {
    ExperimentConfig cfg;
    cfg.central = central;
    cfg.env = std::move(env);
    cfg.B = 1.0;
    cfg.gamma1 = omega_central * codata().hbar;
    cfg.gamma2 = omega_env * codata().hbar;
    cfg.tau = tau;
    cfg.T_total = static_cast<double>(cfg.env.size()) * tau;
    return cfg;
}

}  // namespace qevent
