#include "qevent/measurement_limits.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qevent::limits {

void MeasuringDevice::validate() const {
    if (!(mass > 0) || !(radius > 0) || !(duration > 0) || !std::isfinite(mass) || !std::isfinite(radius) ||
        !std::isfinite(duration)) {
        throw std::invalid_argument("MeasuringDevice: mass, radius and duration must be positive and finite");
    }
}

const char* to_string(BindingBound b) {
    switch (b) {
        case BindingBound::quantum: return "quantum";
        case BindingBound::special_relativity: return "special_relativity";
        case BindingBound::general_relativity: return "general_relativity";
    }
    return "unknown";
}

double AngleBoundReport::binding_value() const {
    switch (binding) {
        case BindingBound::quantum: return bound_quantum;
        case BindingBound::special_relativity: return bound_sr;
        case BindingBound::general_relativity: return bound_gr;
    }
    return bound_quantum;
}

AngleBoundReport delta_theta_floor(const MeasuringDevice& dev, const PhysicalConstants& k) {
    dev.validate();
    AngleBoundReport r;
    r.bound_quantum = std::sqrt(k.hbar * dev.duration / dev.mass) / dev.radius;
    r.bound_sr = std::sqrt(k.hbar / (k.c * dev.mass * dev.radius));
    r.bound_gr = k.planck_length() / dev.radius;
    r.sr_consistent = dev.radius <= k.c * dev.duration;
    r.gr_consistent = dev.radius >= 2.0 * k.G * dev.mass / (k.c * k.c);

    double best = r.bound_quantum;
    if (r.sr_consistent && r.bound_sr > best) {
        best = r.bound_sr;
        r.binding = BindingBound::special_relativity;
    }
    if (r.gr_consistent && r.bound_gr > best) r.binding = BindingBound::general_relativity;
    return r;
}

Eigen::Matrix2cd tilted_spin_operator(Axis axis, double dtheta, TiltForm form) {
    if (!std::isfinite(dtheta) || std::abs(dtheta) > std::numbers::pi / 2) {
        throw std::domain_error("tilted_spin_operator: |dtheta| must be <= pi/2");
    }
    const Eigen::Matrix2cd sx = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    const Eigen::Matrix2cd sy = (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
    const Eigen::Matrix2cd sz = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    const double c = form == TiltForm::exact ? std::cos(dtheta) : 1.0;
    const double s = form == TiltForm::exact ? std::sin(dtheta) : dtheta;
    switch (axis) {
        case Axis::z: return s * sx + c * sz;
        case Axis::x: return c * sx + s * sz;
        case Axis::y: return c * sy + s * sz;
    }
    throw std::invalid_argument("tilted_spin_operator: unknown axis");
}

QubitState prepared_state(const QubitState& intended, double dtheta) {
    if (dtheta == 0.0) return intended;
    const cplx alpha = intended.up();
    const cplx beta = intended.down();
    return QubitState::renormalize(alpha - 0.5 * dtheta * beta, beta + 0.5 * dtheta * alpha);
}

std::optional<std::string> preparation_warning(double dtheta) {
    if (std::abs(dtheta) > 0.1) {
        return "dtheta = " + std::to_string(dtheta) + " is outside the first-order preparation regime (|dtheta| <= 0.1)";
    }
    return std::nullopt;
}

LogMagnitude cross_terms_bound(std::size_t n_env, double dtheta) {
    if (!(dtheta >= 0) || !std::isfinite(dtheta)) throw std::domain_error("cross_terms_bound: dtheta must be >= 0");
    if (n_env == 0 || dtheta == 0.0) return LogMagnitude::zero();
    const double n1 = static_cast<double>(n_env) + 1.0;
    const double L = n1 * std::log1p(dtheta);  // ln (1+x)^{N+1}
    const double tail_ln = n1 * std::log(dtheta);  // ln x^{N+1}
    if (L < 700.0) {
        const double total = std::expm1(L) - std::exp(tail_ln);
        if (total > 0 && std::isnormal(total)) return LogMagnitude::from_double(total);
        // Tiny x: (1+x)^{N+1} - 1 - x^{N+1} ~ (N+1) x to leading order.
        if (dtheta < 1.0) {
            return LogMagnitude::from_log10(std::log10(n1) + std::log10(dtheta) +
                                            std::log10(1.0 + 0.5 * (n1 - 1.0) * dtheta));
        }
    }
    // (1+x)^{N+1} [1 - (1+x)^{-(N+1)} - (x/(1+x))^{N+1}]
    const double rest = -std::expm1(-L) - std::exp(tail_ln - L);
    return LogMagnitude::from_log10(L / std::numbers::ln10 + std::log10(rest));
}

MeasuredM expectation_M_measured(const ExperimentConfig& cfg, const analytic::ClockParams& clock, double dtheta) {
    if (!(dtheta >= 0) || !std::isfinite(dtheta)) {
        throw std::domain_error("expectation_M_measured: dtheta must be >= 0");
    }
    MeasuredM out;
    out.signal = log_exp_neg(analytic::realclock_damping_exponent(cfg, clock));
    if (cfg.uniform_coupling()) out.expectation = analytic::expectation_M_realclock(cfg, clock);

    const double N = static_cast<double>(cfg.n_env());
    const LogMagnitude tilt_n = dtheta == 0.0 ? (cfg.n_env() == 0 ? LogMagnitude::one() : LogMagnitude::zero())
                                              : log_pow(dtheta, N);
    const LogMagnitude tilt_n1 = dtheta == 0.0 ? LogMagnitude::zero() : log_pow(dtheta, N + 1.0);

    LogMagnitude populations = LogMagnitude::from_double(cfg.central.population_imbalance());
    LogMagnitude corrected = LogMagnitude::from_double(cfg.central.population_imbalance() +
                                                       dtheta * cfg.central.coherence_sum());
    for (const auto& e : cfg.env) {
        populations *= LogMagnitude::from_double(e.state.population_imbalance());
        corrected *= LogMagnitude::from_double(e.state.population_imbalance() + dtheta * e.state.coherence_sum());
    }
    out.budget.leading = tilt_n * populations;
    out.budget.preparation_corrected = tilt_n * corrected;
    out.budget.leading_operator_form = tilt_n1 * populations;
    out.budget.cross_terms_bound = cross_terms_bound(cfg.n_env(), dtheta);
    return out;
}

SxMeasured expectation_Sx_measured(const ExperimentConfig& cfg, double dtheta) {
    if (!(dtheta >= 0) || !std::isfinite(dtheta)) {
        throw std::domain_error("expectation_Sx_measured: dtheta must be >= 0");
    }
    const cplx a = cfg.central.up();
    const cplx b = cfg.central.down();
    SxMeasured out;
    out.z = analytic::decoherence_factor_z(cfg);
    const cplx a_prep = a - 0.5 * dtheta * b;
    const cplx b_prep = b + 0.5 * dtheta * a;
    out.coherence = 2.0 * std::real(out.z * a_prep * std::conj(b_prep));
    out.error_linear = dtheta * cfg.central.population_imbalance();
    out.error_quadratic = dtheta * dtheta * cfg.central.coherence_sum();
    out.value = out.coherence + out.error_linear + out.error_quadratic;
    return out;
}

}  // namespace qevent::limits
