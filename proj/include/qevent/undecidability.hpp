// undecidability.hpp: feasibility conditions of the spin-flight experiment,
// the real-clock exponent K, and the log-domain test of whether the residual
// signal e^{-K} sits below the irreducible angular-error floor.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "qevent/analytic_engine.hpp"
#include "qevent/constants.hpp"
#include "qevent/log_magnitude.hpp"
#include "qevent/types.hpp"

namespace qevent::undecidability {

struct FeasibilityOptions {
    double weak_coupling_threshold{0.1};  // condition c): f / |B dgamma / hbar| below this
    std::optional<double> dx_reference;  // condition b) scale; defaults to the impact parameter d
};

struct Condition {
    double value{};
    bool pass{};
    double margin_log10{};  // decades of slack; negative when failing
};

struct FeasibilityReport {
    double f_dipolar{};       // mu0 gamma1 gamma2 / (hbar d^3), rad/s
    Condition cond_a;         // value = f tau, pass iff > 1
    Condition cond_b;         // value = dx = sqrt(hbar T / m), pass iff dx <= reference
    double cond_b_reference{};
    Condition cond_c;         // value = f / |B dgamma / hbar|, pass iff < threshold
    double cond_d_K{};        // informational
};

FeasibilityReport feasibility_check(const ExperimentConfig& cfg, const FeasibilityOptions& opts = {},
                                    const PhysicalConstants& k = codata());

// K = 6 N [B(gamma1 - gamma2)/hbar]^2 T_P^{4/3} tau^{2/3}
double K_exponent(const ExperimentConfig& cfg, const PhysicalConstants& k = codata());
// K = 4 N [B dgamma/hbar]^2 theta for an explicit clock; equals K_exponent(cfg)
// for ClockParams::for_config(cfg).
double K_exponent(const ExperimentConfig& cfg, const analytic::ClockParams& clock);

// N^5 T_P^{4/3} hbar^{20/3} / (m^4 (gamma1 gamma2)^{8/3} mu0^{8/3}). The N^5
// growth is specific to this model. Throws std::domain_error unless
// m, gamma1 gamma2 and mu0 are positive.
LogMagnitude K_lower_bound(const ExperimentConfig& cfg, const PhysicalConstants& k = codata());
// The N-independent coefficient c in K_lower_bound = c N^5.
LogMagnitude K_lower_bound_coefficient(const ExperimentConfig& cfg, const PhysicalConstants& k = codata());

enum class Verdict { decidable, undecidable };
const char* to_string(Verdict v);

struct UndecidabilityVerdict {
    LogMagnitude signal;             // e^{-K}
    LogMagnitude floor;              // (dtheta)^{2N}
    LogMagnitude cross_terms_bound;  // reported, not part of the floor
    Verdict verdict{Verdict::decidable};
    double margin_log10{};  // floor.log10 - signal.log10; > 0 means buried
};

// Core comparison: signal e^{-K} against (dtheta)^{2N}. Ties are undecidable.
// dtheta <= 0 throws std::domain_error.
UndecidabilityVerdict decide_exponent(double K, std::size_t n_env, double dtheta);
// K itself beyond double range.
UndecidabilityVerdict decide_exponent(const LogMagnitude& K, std::size_t n_env, double dtheta);

struct Decision {
    double K_linear{};             // K_exponent(cfg, clock)
    UndecidabilityVerdict linear;  // K grows like N
    // K grows like N^5; absent when gamma1 gamma2 <= 0 (the bound is undefined).
    std::optional<LogMagnitude> K_power_law;
    std::optional<UndecidabilityVerdict> power_law;
};

Decision decide(const ExperimentConfig& cfg, const analytic::ClockParams& clock, double dtheta);

// Verdict for N = 1..N_max given K(N); verdicts[i] is for N = i + 1.
struct CrossoverScan {
    std::optional<std::size_t> first_undecidable;
    std::vector<Verdict> verdicts;
};
CrossoverScan scan_crossover(const std::function<LogMagnitude(std::size_t)>& K_of_N, double dtheta,
                             std::size_t N_max, bool keep_verdicts = false);

// K = c N^5 model for an explicit coefficient c >= 0.
CrossoverScan crossover_power_law(const LogMagnitude& c, double dtheta, std::size_t N_max,
                                  bool keep_verdicts = false);

struct CrossoverResult {
    std::optional<std::size_t> power_law;  // K_lower_bound growth
    std::optional<std::size_t> linear;     // K_exponent growth
};

// Per-spin parameters come from the template; N is scanned. N_max = 0 throws.
CrossoverResult crossover_N(const ExperimentConfig& cfg_template, double dtheta, std::size_t N_max);

// Local-observable test: signal |z| |ab^* + a^*b| against
// dtheta^2 |ab^* + a^*b| + dtheta ||a|^2 - |b|^2|.
UndecidabilityVerdict local_undecidability(const ExperimentConfig& cfg, double dtheta);

}  // namespace qevent::undecidability
