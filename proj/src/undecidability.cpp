#include "qevent/undecidability.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qevent/measurement_limits.hpp"

namespace qevent::undecidability {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log10_ratio(double num, double den) {
    if (num == 0.0 && den == 0.0) return 0.0;
    return std::log10(std::abs(num)) - std::log10(std::abs(den));
}

void require_positive_dtheta(double dtheta, const char* who) {
    if (!(dtheta > 0) || !std::isfinite(dtheta)) {
        throw std::domain_error(std::string(who) + ": dtheta must be > 0 (a perfect device is impossible)");
    }
}

// log10 of floor minus log10 of signal, with zero treated as -inf.
double margin(const LogMagnitude& floor, const LogMagnitude& signal) {
    const double f = floor.is_zero() ? -kInf : floor.log10_mag();
    const double s = signal.is_zero() ? -kInf : signal.log10_mag();
    if (f == -kInf && s == -kInf) return 0.0;
    return f - s;
}

double per_spin_K(const ExperimentConfig& cfg, const PhysicalConstants& k) {
    const double split = cfg.omega_split(k);
    return 6.0 * split * split * k.planck_time_4_3() * std::pow(cfg.tau, 2.0 / 3.0);
}

UndecidabilityVerdict verdict_for_signal(const LogMagnitude& signal, std::size_t n_env, double dtheta) {
    require_positive_dtheta(dtheta, "decide");
    UndecidabilityVerdict v;
    v.signal = signal;
    v.floor = log_pow(dtheta, 2.0 * static_cast<double>(n_env));
    v.cross_terms_bound = limits::cross_terms_bound(n_env, dtheta);
    v.verdict = v.signal <= v.floor ? Verdict::undecidable : Verdict::decidable;
    v.margin_log10 = margin(v.floor, v.signal);
    return v;
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::undecidable ? "Undecidable" : "Decidable"; }

FeasibilityReport feasibility_check(const ExperimentConfig& cfg, const FeasibilityOptions& opts,
                                    const PhysicalConstants& k) {
    FeasibilityReport r;
    r.f_dipolar = k.mu0 * cfg.gamma1 * cfg.gamma2 / (k.hbar * cfg.d * cfg.d * cfg.d);

    const double f_tau = r.f_dipolar * cfg.tau;
    r.cond_a = {f_tau, f_tau > 1.0, f_tau > 0 ? std::log10(f_tau) : -kInf};

    const double dx = std::sqrt(k.hbar * cfg.T_total / cfg.m);
    r.cond_b_reference = opts.dx_reference.value_or(cfg.d);
    r.cond_b = {dx, dx <= r.cond_b_reference, log10_ratio(r.cond_b_reference, dx)};

    const double split = std::abs(cfg.omega_split(k));
    const double ratio = split > 0 ? std::abs(r.f_dipolar) / split : kInf;
    r.cond_c = {ratio, ratio < opts.weak_coupling_threshold,
                ratio == kInf ? -kInf : log10_ratio(opts.weak_coupling_threshold, ratio)};

    r.cond_d_K = K_exponent(cfg, k);
    return r;
}

double K_exponent(const ExperimentConfig& cfg, const PhysicalConstants& k) {
    return static_cast<double>(cfg.n_env()) * per_spin_K(cfg, k);
}

double K_exponent(const ExperimentConfig& cfg, const analytic::ClockParams& clock) {
    return analytic::realclock_damping_exponent(cfg, clock);
}

LogMagnitude K_lower_bound_coefficient(const ExperimentConfig& cfg, const PhysicalConstants& k) {
    const double g = cfg.gamma1 * cfg.gamma2;
    if (!(cfg.m > 0) || !(g > 0) || !(k.mu0 > 0)) {
        throw std::domain_error("K_lower_bound: m, gamma1 gamma2 and mu0 must be positive");
    }
    const double log10_c = (4.0 / 3.0) * std::log10(k.planck_time()) + (20.0 / 3.0) * std::log10(k.hbar) -
                           4.0 * std::log10(cfg.m) - (8.0 / 3.0) * std::log10(g) - (8.0 / 3.0) * std::log10(k.mu0);
    return LogMagnitude::from_log10(log10_c);
}

LogMagnitude K_lower_bound(const ExperimentConfig& cfg, const PhysicalConstants& k) {
    const LogMagnitude c = K_lower_bound_coefficient(cfg, k);
    if (cfg.n_env() == 0) return LogMagnitude::zero();
    return c * log_pow(static_cast<double>(cfg.n_env()), 5.0);
}

UndecidabilityVerdict decide_exponent(double K, std::size_t n_env, double dtheta) {
    UndecidabilityVerdict v = verdict_for_signal(log_exp_neg(K), n_env, dtheta);
    // Compare ln(signal) = -K with ln(floor) = 2N ln(dtheta) in extended
    // precision so near-ties are resolved by the inputs, not by rounding.
    const long double ln_signal = -static_cast<long double>(K);
    const long double ln_floor = 2.0L * static_cast<long double>(n_env) * std::log(static_cast<long double>(dtheta));
    v.verdict = ln_signal <= ln_floor ? Verdict::undecidable : Verdict::decidable;
    v.margin_log10 = static_cast<double>((ln_floor - ln_signal) / std::numbers::ln10_v<long double>);
    return v;
}

UndecidabilityVerdict decide_exponent(const LogMagnitude& K, std::size_t n_env, double dtheta) {
    return verdict_for_signal(log_exp_neg(K), n_env, dtheta);
}

Decision decide(const ExperimentConfig& cfg, const analytic::ClockParams& clock, double dtheta) {
    require_positive_dtheta(dtheta, "decide");
    Decision d;
    d.K_linear = K_exponent(cfg, clock);
    d.linear = decide_exponent(d.K_linear, cfg.n_env(), dtheta);
    if (cfg.gamma1 * cfg.gamma2 > 0 && cfg.m > 0) {
        d.K_power_law = K_lower_bound(cfg);
        d.power_law = decide_exponent(*d.K_power_law, cfg.n_env(), dtheta);
    }
    return d;
}

CrossoverScan scan_crossover(const std::function<LogMagnitude(std::size_t)>& K_of_N, double dtheta,
                             std::size_t N_max, bool keep_verdicts) {
    require_positive_dtheta(dtheta, "crossover");
    if (N_max == 0) throw std::invalid_argument("crossover: N_max must be >= 1");
    CrossoverScan scan;
    if (keep_verdicts) scan.verdicts.reserve(N_max);
    for (std::size_t n = 1; n <= N_max; ++n) {
        const Verdict v = decide_exponent(K_of_N(n), n, dtheta).verdict;
        if (keep_verdicts) scan.verdicts.push_back(v);
        if (v == Verdict::undecidable && !scan.first_undecidable) {
            scan.first_undecidable = n;
            if (!keep_verdicts) break;
        }
    }
    return scan;
}

CrossoverScan crossover_power_law(const LogMagnitude& c, double dtheta, std::size_t N_max, bool keep_verdicts) {
    if (c.sign() < 0) throw std::domain_error("crossover_power_law: coefficient must be >= 0");
    return scan_crossover([&](std::size_t n) { return c * log_pow(static_cast<double>(n), 5.0); }, dtheta, N_max,
                          keep_verdicts);
}

CrossoverResult crossover_N(const ExperimentConfig& cfg_template, double dtheta, std::size_t N_max) {
    CrossoverResult out;
    const double k1 = per_spin_K(cfg_template, codata());
    out.linear = scan_crossover([&](std::size_t n) { return LogMagnitude::from_double(k1 * static_cast<double>(n)); },
                                dtheta, N_max)
                     .first_undecidable;
    if (cfg_template.gamma1 * cfg_template.gamma2 > 0) {
        out.power_law = crossover_power_law(K_lower_bound_coefficient(cfg_template), dtheta, N_max).first_undecidable;
    }
    return out;
}

UndecidabilityVerdict local_undecidability(const ExperimentConfig& cfg, double dtheta) {
    require_positive_dtheta(dtheta, "local_undecidability");
    const double coherence = std::abs(cfg.central.coherence_sum());
    const double imbalance = std::abs(cfg.central.population_imbalance());

    UndecidabilityVerdict v;
    v.signal = analytic::decoherence_factor_abs_log(cfg) * LogMagnitude::from_double(coherence);
    v.floor = add_same_sign(log_pow(dtheta, 2.0) * LogMagnitude::from_double(coherence),
                            log_pow(dtheta, 1.0) * LogMagnitude::from_double(imbalance));
    v.cross_terms_bound = LogMagnitude::zero();
    v.verdict = v.signal <= v.floor ? Verdict::undecidable : Verdict::decidable;
    v.margin_log10 = margin(v.floor, v.signal);
    return v;
}

}  // namespace qevent::undecidability
