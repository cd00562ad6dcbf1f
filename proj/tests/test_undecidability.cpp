#include <doctest.h>

#include <numbers>
#include <random>

#include "qevent/undecidability.hpp"
#include "support.hpp"

using namespace qevent;
using namespace qevent::undecidability;

namespace {

ExperimentConfig bohr_pair(double tau) {
    const double mu_b = reference::bohr_magneton;
    ExperimentConfig cfg;
    cfg.central = testing::balanced();
    cfg.env = {{testing::balanced(), 0.0}};
    cfg.B = 1.0;
    cfg.gamma1 = cfg.gamma2 = mu_b;
    cfg.tau = tau;
    cfg.T_total = tau;
    cfg.m = reference::electron_mass;
    cfg.d = 1e-9;
    return cfg;
}

// Smallest N with c N^5 >= 2 N L ln 10, L = -log10 dtheta.
std::size_t closed_form_crossover(double log10_c, double L) {
    const double n = std::pow(2.0 * L * std::numbers::ln10 / std::pow(10.0, log10_c), 0.25);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(n)));
}

}  // namespace

TEST_SUITE("undecidability") {

TEST_CASE("feasibility of a Bohr-magneton pair") {
    const auto r = feasibility_check(bohr_pair(1e-8));
    // mu0 mu_B^2 / (hbar (1 nm)^3) at 50 digits.
    CHECK(r.f_dipolar == doctest::Approx(1.0248701176163334119e9).epsilon(1e-13));
    CHECK(r.cond_a.value == doctest::Approx(10.248701176163334119).epsilon(1e-13));
    CHECK(r.cond_a.pass);
    CHECK(r.cond_a.margin_log10 > 0);
    // gamma1 = gamma2: no z-basis selection.
    CHECK_FALSE(r.cond_c.pass);
    CHECK(r.cond_b_reference == 1e-9);

    const auto short_flight = feasibility_check(bohr_pair(1e-12));
    CHECK_FALSE(short_flight.cond_a.pass);
    CHECK(short_flight.cond_a.margin_log10 == doctest::Approx(std::log10(short_flight.cond_a.value)));

    auto split = bohr_pair(1e-8);
    split.gamma1 = 1e6 * split.gamma2;
    split.B = 10.0;
    const auto c = feasibility_check(split, {.weak_coupling_threshold = 0.1, .dx_reference = 1.0});
    CHECK(c.cond_c.pass);
    CHECK(c.cond_b_reference == 1.0);
}

TEST_CASE("K exponent") {
    auto cfg = make_config(QubitState{}, {}, 1e15, 0.0, 1.0);
    CHECK(K_exponent(cfg) == 0.0);
    CHECK(log_exp_neg(K_exponent(cfg)) == LogMagnitude::one());
    cfg.env.assign(10, {QubitState{}, 0.0});
    // 60e30 T_P^{4/3} at 50 digits.
    CHECK(K_exponent(cfg) == doctest::Approx(1.2219970672077368806e-26).epsilon(1e-12));
}

TEST_CASE("N^5 lower bound") {
    auto cfg = bohr_pair(1e-8);
    cfg.env.clear();
    CHECK(K_lower_bound(cfg).is_zero());
    // Electron mass, Bohr magneton moments, vacuum permeability: log10 c at 50 digits.
    CHECK(K_lower_bound_coefficient(cfg).log10_mag() == doctest::Approx(-25.465182640678011126).epsilon(1e-13));
    cfg.env.assign(1000000, {testing::balanced(), 0.0});
    CHECK(K_lower_bound(cfg).log10_mag() == doctest::Approx(-25.465182640678011126 + 30.0).epsilon(1e-13));
    cfg.gamma2 = -cfg.gamma2;
    CHECK_THROWS_AS(K_lower_bound(cfg), std::domain_error);
}

TEST_CASE("verdicts from the log-domain comparison") {
    const auto buried = decide_exponent(300.0, 1, 1e-62);
    CHECK(buried.verdict == Verdict::undecidable);
    CHECK(buried.signal.log10_mag() == doctest::Approx(-130.28834457097554829).epsilon(1e-15));
    CHECK(buried.floor.log10_mag() == doctest::Approx(-124.0));
    CHECK(buried.margin_log10 == doctest::Approx(6.2883445709755482953).epsilon(1e-12));

    const auto visible = decide_exponent(100.0, 1, 1e-62);
    CHECK(visible.verdict == Verdict::decidable);
    CHECK(visible.signal.log10_mag() == doctest::Approx(-43.429448190325182765).epsilon(1e-14));

    for (double k : {0.0, 1e-30, 5.0, 1e6}) CHECK(decide_exponent(k, 7, 1.0).verdict == Verdict::undecidable);
    CHECK_THROWS_AS(decide_exponent(1.0, 1, 0.0), std::domain_error);
    CHECK_THROWS_AS(decide_exponent(1.0, 1, -1e-3), std::domain_error);

    // Signal equal to the floor counts as buried.
    CHECK(decide_exponent(2.0 * std::numbers::ln10, 1, 0.1).verdict == Verdict::undecidable);
    CHECK(decide_exponent(0.0, 0, 0.5).verdict == Verdict::undecidable);

    CHECK(std::string(to_string(Verdict::undecidable)) == "Undecidable");
    CHECK(std::string(to_string(Verdict::decidable)) == "Decidable");
}

TEST_CASE("decide reports both growth models") {
    auto cfg = bohr_pair(1.0);
    cfg.gamma1 = 2.0 * cfg.gamma2;
    const auto d = decide(cfg, analytic::ClockParams::for_config(cfg), 1e-3);
    CHECK(d.K_linear == doctest::Approx(K_exponent(cfg)).epsilon(1e-14));
    REQUIRE(d.power_law.has_value());
    CHECK(*d.K_power_law == K_lower_bound(cfg));

    cfg.gamma2 = 0.0;
    const auto no_bound = decide(cfg, analytic::ClockParams::for_config(cfg), 1e-3);
    CHECK_FALSE(no_bound.power_law.has_value());
    CHECK_FALSE(no_bound.K_power_law.has_value());
}

TEST_CASE("property: verdict is antitone in K and dtheta") {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> k(0.0, 700.0), lg(-80.0, 0.0);
    std::uniform_int_distribution<std::size_t> n(0, 50);
    for (int i = 0; i < 2000; ++i) {
        const double k1 = k(rng), k2 = k(rng);
        const double d1 = std::pow(10.0, lg(rng)), d2 = std::pow(10.0, lg(rng));
        const std::size_t N = n(rng);
        const auto v = decide_exponent(std::min(k1, k2), N, std::min(d1, d2)).verdict;
        if (v == Verdict::undecidable) {
            CHECK(decide_exponent(std::max(k1, k2), N, std::min(d1, d2)).verdict == Verdict::undecidable);
            CHECK(decide_exponent(std::min(k1, k2), N, std::max(d1, d2)).verdict == Verdict::undecidable);
        }
    }
}

TEST_CASE("crossover under the N^5 model") {
    const double L = 62.0;
    for (double log10_c : {-25.0, -10.0, -3.0, 0.0, 2.0}) {
        const auto scan = crossover_power_law(LogMagnitude::from_log10(log10_c), 1e-62, 10000000);
        REQUIRE(scan.first_undecidable.has_value());
        const auto expected = closed_form_crossover(log10_c, L);
        CHECK(std::llabs(static_cast<long long>(*scan.first_undecidable) - static_cast<long long>(expected)) <= 1);
    }
    CHECK(crossover_power_law(LogMagnitude::from_log10(50.0), 1e-62, 10).first_undecidable == 1u);
    const auto none = crossover_power_law(LogMagnitude::zero(), 1e-62, 1000, true);
    CHECK_FALSE(none.first_undecidable.has_value());
    for (auto v : none.verdicts) CHECK(v == Verdict::decidable);
    CHECK_THROWS_AS(crossover_power_law(LogMagnitude::one(), 1e-3, 0), std::invalid_argument);
}

TEST_CASE("crossover for electrons flying past an electron") {
    auto cfg = bohr_pair(1e-8);
    const auto r = crossover_N(cfg, 1e-62, 20000000);
    REQUIRE(r.power_law.has_value());
    // ceil((2 * 62 ln 10 / c)^{1/4}) with the 50-digit coefficient.
    CHECK(std::llabs(static_cast<long long>(*r.power_law) - 9554435LL) <= 1);
    // Equal moments: no splitting, so the linear model never damps.
    CHECK_FALSE(r.linear.has_value());
}

TEST_CASE("local observable criterion") {
    auto family = [](std::size_t n) {
        return make_config(testing::balanced(), std::vector<EnvSpin>(n, {testing::balanced(0.9), 0.3}), 1.0, 0.0, 1.0);
    };
    const auto twenty = local_undecidability(family(20), 1e-2);
    CHECK(twenty.verdict == Verdict::decidable);
    // cos(0.6)^20 at 50 digits; the floor is dtheta^2 for a balanced central spin.
    CHECK(twenty.signal.to_double() == doctest::Approx(0.021508579253641212776).epsilon(1e-12));
    CHECK(twenty.floor.to_double() == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(local_undecidability(family(200), 1e-2).verdict == Verdict::undecidable);
    CHECK(local_undecidability(family(47), 1e-2).verdict == Verdict::decidable);
    CHECK(local_undecidability(family(48), 1e-2).verdict == Verdict::undecidable);
    CHECK_THROWS_AS(local_undecidability(family(3), 0.0), std::domain_error);
}

}  // TEST_SUITE
