// state_vector.hpp: dense amplitudes over central spin x N environment spins

#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qevent/types.hpp"

namespace qevent {

// Index bit 0 is the central spin, bit k (k = 1..N) the k-th environment spin
// in flight order; a clear bit means spin up.
struct StateVector {
    std::size_t n_env{0};
    Eigen::VectorXcd amps;

    [[nodiscard]] std::size_t dim() const { return std::size_t{1} << (n_env + 1); }
    [[nodiscard]] double norm() const { return amps.norm(); }

    // (a|up> + b|down>) (x) prod_k (alpha_k|up> + beta_k|down>)
    static StateVector product(const QubitState& central, const std::vector<QubitState>& env);
};

}  // namespace qevent
