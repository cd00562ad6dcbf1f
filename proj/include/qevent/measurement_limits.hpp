// measurement_limits.hpp: angular resolution floor of a spin-measuring device
// and how that angular error propagates into measured spin observables.
//
// All bounds are order-of-magnitude inequalities taken with coefficient 1.

#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "qevent/analytic_engine.hpp"
#include "qevent/constants.hpp"
#include "qevent/log_magnitude.hpp"
#include "qevent/types.hpp"

namespace qevent::limits {

struct MeasuringDevice {
    double mass{1.0};      // kg
    double radius{1.0};    // m
    double duration{1.0};  // s

    void validate() const;
};

enum class BindingBound { quantum, special_relativity, general_relativity };
const char* to_string(BindingBound b);

struct AngleBoundReport {
    double bound_quantum{};  // sqrt(hbar tau / M) / R
    double bound_sr{};       // sqrt(hbar / (c M R))
    double bound_gr{};       // l_P / R
    BindingBound binding{BindingBound::quantum};
    bool sr_consistent{};  // R <= c tau
    bool gr_consistent{};  // R >= 2 G M / c^2

    [[nodiscard]] double binding_value() const;
};

AngleBoundReport delta_theta_floor(const MeasuringDevice& dev, const PhysicalConstants& k = codata());

enum class Axis { x, y, z };
enum class TiltForm { exact, first_order };

// Spin operator along an axis tilted by dtheta. z tilts toward x
// (sin sx + cos sz); x and y tilt toward z. |dtheta| <= pi/2.
Eigen::Matrix2cd tilted_spin_operator(Axis axis, double dtheta, TiltForm form = TiltForm::exact);

// Intended alpha|up> + beta|down> prepared with eigenstates of sz + dtheta sx:
// (alpha - dtheta/2 beta, beta + dtheta/2 alpha), renormalized.
QubitState prepared_state(const QubitState& intended, double dtheta);
// Set when dtheta leaves the first-order regime (|dtheta| > 0.1).
std::optional<std::string> preparation_warning(double dtheta);

struct ErrorBudget {
    // (dtheta)^N (|a|^2 - |b|^2) prod_k (|alpha_k|^2 - |beta_k|^2)
    LogMagnitude leading;
    // Same with the preparation-perturbed populations substituted:
    // (dtheta)^N (|a|^2-|b|^2 + dtheta(ab^*+a^*b)) prod_k (... + dtheta(alpha_k beta_k^* + c.c.))
    LogMagnitude preparation_corrected;
    // Operator-expansion coefficient (dtheta)^{N+1} on sz (x) prod sz, same populations as `leading`.
    LogMagnitude leading_operator_form;
    // Upper bound on |<E(dtheta)>|: sum_{n=1}^{N} C(N+1, n) dtheta^n.
    LogMagnitude cross_terms_bound;
};

struct MeasuredM {
    LogMagnitude signal;  // e^{-K}, K = 4 N (B dgamma)^2 theta
    // Real-clock <M> when couplings are uniform, otherwise absent.
    std::optional<double> expectation;
    ErrorBudget budget;
};

// sum_{n=1}^{N} C(N+1, n) x^n = (1+x)^{N+1} - 1 - x^{N+1}, x >= 0.
LogMagnitude cross_terms_bound(std::size_t n_env, double dtheta);

MeasuredM expectation_M_measured(const ExperimentConfig& cfg, const analytic::ClockParams& clock, double dtheta);

struct SxMeasured {
    double value{};
    cplx z{};
    double coherence{};     // 2 Re(z (a - dtheta/2 b)(b + dtheta/2 a)^*)
    double error_linear{};  // dtheta (|a|^2 - |b|^2)
    double error_quadratic{};  // dtheta^2 (ab^* + a^*b)
};

SxMeasured expectation_Sx_measured(const ExperimentConfig& cfg, double dtheta);

}  // namespace qevent::limits
