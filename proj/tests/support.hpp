// Shared helpers for the unit and acceptance suites: seeded random
// configurations and small numeric utilities.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qevent/types.hpp"

namespace qevent::testing {

inline QubitState random_qubit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double polar = std::acos(1.0 - 2.0 * u(rng));
    const double azimuth = 2.0 * std::numbers::pi * u(rng);
    return QubitState::bloch(polar, azimuth);
}

// Random couplings and Zeeman frequencies of order one (hbar = 1 units).
inline ExperimentConfig random_config(std::mt19937_64& rng, std::size_t n_env, double f_max = 2.0) {
    std::uniform_real_distribution<double> f(-f_max, f_max);
    std::uniform_real_distribution<double> omega(0.2, 3.0);
    std::uniform_real_distribution<double> tau(0.1, 1.5);
    std::vector<EnvSpin> env;
    for (std::size_t k = 0; k < n_env; ++k) env.push_back({random_qubit(rng), f(rng)});
    return make_config(random_qubit(rng), std::move(env), omega(rng), omega(rng), tau(rng));
}

inline QubitState balanced(double phase = 0.0) {
    return {std::complex<double>(std::numbers::sqrt2 / 2), std::polar(std::numbers::sqrt2 / 2, phase)};
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qevent::testing
