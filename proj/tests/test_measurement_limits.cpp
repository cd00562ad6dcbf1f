#include <doctest.h>

#include <numbers>
#include <random>

#include "qevent/analytic_engine.hpp"
#include "qevent/measurement_limits.hpp"
#include "support.hpp"

using namespace qevent;
using namespace qevent::limits;

namespace {

const Eigen::Matrix2cd kSx = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
const Eigen::Matrix2cd kSy = (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
const Eigen::Matrix2cd kSz = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();

double expectation(const Eigen::Matrix2cd& op, const QubitState& s) {
    const Eigen::Vector2cd v(s.up(), s.down());
    return (v.adjoint() * op * v)(0).real();
}

}  // namespace

TEST_SUITE("measurement_limits") {

TEST_CASE("angular floor of a universe-sized device") {
    const auto r = delta_theta_floor({1e50, 1e27, 1e18});
    // l_P / 1e27 at 50 digits.
    CHECK(r.bound_gr == doctest::Approx(1.6162550239285500507e-62).epsilon(1e-13));
    CHECK(r.gr_consistent);
}

TEST_CASE("bench-top device is quantum limited") {
    const auto r = delta_theta_floor({1.0, 1.0, 1.0});
    // sqrt(hbar) at 50 digits.
    CHECK(r.bound_quantum == doctest::Approx(1.0269234718322490461e-17).epsilon(1e-13));
    CHECK(r.sr_consistent);
    CHECK(r.gr_consistent);
    CHECK(r.binding_value() >= r.bound_quantum);
}

TEST_CASE("Schwarzschild saturation") {
    const double M = 1e30;
    const double R = 2.0 * codata().G * M / (codata().c * codata().c);
    const auto r = delta_theta_floor({M, R, 1e3});
    // With R = 2GM/c^2 the relativistic bound exceeds l_P/R by exactly sqrt(2).
    CHECK(r.bound_sr / r.bound_gr == doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("binding bound respects applicability") {
    const auto huge = delta_theta_floor({1.0, 1e12, 1.0});  // R > c tau
    CHECK_FALSE(huge.sr_consistent);
    CHECK(huge.binding != BindingBound::special_relativity);
    CHECK_THROWS_AS(delta_theta_floor({0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("property: floor is the largest applicable bound") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> lg(-10.0, 40.0);
    for (int i = 0; i < 1000; ++i) {
        const MeasuringDevice dev{std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng) / 2)};
        const auto r = delta_theta_floor(dev);
        CHECK(r.binding_value() >= r.bound_quantum);
        if (r.sr_consistent) CHECK(r.binding_value() >= r.bound_sr);
        if (r.gr_consistent) CHECK(r.binding_value() >= r.bound_gr);
    }
}

TEST_CASE("tilted spin operators") {
    CHECK(testing::max_abs_diff(tilted_spin_operator(Axis::z, 0.0), kSz) == 0.0);
    CHECK(testing::max_abs_diff(tilted_spin_operator(Axis::x, 0.0), kSx) == 0.0);
    CHECK(testing::max_abs_diff(tilted_spin_operator(Axis::y, 0.0), kSy) == 0.0);
    CHECK(testing::max_abs_diff(tilted_spin_operator(Axis::z, std::numbers::pi / 2), kSx) < 1e-15);
    CHECK_THROWS_AS(tilted_spin_operator(Axis::z, 2.0), std::domain_error);

    const double dt = 1e-3;
    const QubitState s = QubitState::renormalize(0.8, cplx(0.3, 0.52));
    const double sz = s.population_imbalance();
    const double expansion = sz + dt * s.coherence_sum() - 0.5 * dt * dt * sz;
    CHECK(std::abs(expectation(tilted_spin_operator(Axis::z, dt), s) - expansion) < 1e-9);
    CHECK(std::abs(expectation(tilted_spin_operator(Axis::z, dt, TiltForm::first_order), s) - sz -
                   dt * s.coherence_sum()) < 1e-15);
}

TEST_CASE("preparation with a tilted device") {
    std::mt19937_64 rng(4);
    const QubitState s = testing::random_qubit(rng);
    CHECK(prepared_state(s, 0.0) == s);

    const auto p = prepared_state(QubitState{}, 1e-2);
    const double n = std::sqrt(1.0 + 25e-6);
    CHECK(std::abs(p.up() - 1.0 / n) < 1e-15);
    CHECK(std::abs(p.down() - 5e-3 / n) < 1e-15);

    const double dt = 1e-4;
    const auto b = prepared_state(testing::balanced(), dt);
    // -dtheta 2 alpha beta with alpha = beta = 1/sqrt 2.
    CHECK(b.population_imbalance() == doctest::Approx(-dt).epsilon(1e-6));
    CHECK(b.population_imbalance() != 0.0);

    CHECK_FALSE(preparation_warning(0.05).has_value());
    CHECK(preparation_warning(0.2).has_value());
}

TEST_CASE("cross-term bound matches the binomial sum") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (double x : {1e-6, 1e-2, 0.3, 1.0, 3.0}) {
            double sum = 0.0, binom = 1.0;
            for (std::size_t j = 1; j <= n; ++j) {
                binom = binom * static_cast<double>(n + 2 - j) / static_cast<double>(j);
                sum += binom * std::pow(x, static_cast<double>(j));
            }
            CHECK(cross_terms_bound(n, x).to_double() == doctest::Approx(sum).epsilon(1e-10));
        }
    }
    CHECK(cross_terms_bound(0, 0.5).is_zero());
    CHECK(cross_terms_bound(3, 0.0).is_zero());
    // (N+1) x to leading order when N x << 1.
    CHECK(cross_terms_bound(3, 1e-62).log10_mag() == doctest::Approx(std::log10(4.0) - 62.0).epsilon(1e-14));
    // (1+x)^{N+1} dominates for huge N.
    CHECK(cross_terms_bound(100000, 0.5).log10_mag() ==
          doctest::Approx(100001 * std::log10(1.5)).epsilon(1e-12));
}

TEST_CASE("error budget of the measured M") {
    std::mt19937_64 rng(12);
    auto cfg = testing::random_config(rng, 3);
    for (auto& e : cfg.env) e.f = 0.02;
    const auto ideal = expectation_M_measured(cfg, analytic::ClockParams::ideal(cfg.T_total), 0.0);
    CHECK(ideal.signal == LogMagnitude::one());
    CHECK(ideal.budget.leading.is_zero());
    CHECK(ideal.budget.cross_terms_bound.is_zero());
    REQUIRE(ideal.expectation.has_value());
    CHECK(*ideal.expectation == doctest::Approx(analytic::expectation_M_unitary(cfg, analytic::PhaseConvention::uniform)));

    // Populations 0.1 everywhere: alpha^2 = 0.55.
    const QubitState pop(std::sqrt(0.55), std::sqrt(0.45));
    const auto three = make_config(pop, std::vector<EnvSpin>(3, {pop, 0.0}), 1.0, 0.5, 1.0);
    const auto m = expectation_M_measured(three, analytic::ClockParams::for_config(three), 1e-62);
    CHECK(m.budget.leading.log10_mag() == doctest::Approx(-186.0 - 1.0 - 3.0).epsilon(1e-12));
    CHECK(m.budget.leading_operator_form.log10_mag() == doctest::Approx(-248.0 - 4.0).epsilon(1e-12));

    // Optimal preparation: every corrected factor is dtheta 2 Re(alpha beta^*) = dtheta,
    // central included, so the product is (dtheta)^N (dtheta)^{N+1}.
    const auto balanced = make_config(testing::balanced(), std::vector<EnvSpin>(4, {testing::balanced(), 0.0}), 1, 0.5, 1);
    const auto b = expectation_M_measured(balanced, analytic::ClockParams::ideal(4.0), 1e-10);
    CHECK(b.budget.leading.is_zero());
    CHECK(b.budget.preparation_corrected.log10_mag() == doctest::Approx(-90.0).epsilon(1e-12));
}

TEST_CASE("property: corrected leading term bounded per factor") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> lg(-8.0, -1.0);
    for (int i = 0; i < 300; ++i) {
        const auto cfg = testing::random_config(rng, 1 + static_cast<std::size_t>(i % 8));
        const double dt = std::pow(10.0, lg(rng));
        const auto b = expectation_M_measured(cfg, analytic::ClockParams::ideal(cfg.T_total), dt).budget;
        if (b.leading.is_zero()) continue;
        double log_ratio_bound = std::log10(1.0 + dt * std::abs(cfg.central.coherence_sum() /
                                                               cfg.central.population_imbalance()));
        for (const auto& e : cfg.env) {
            log_ratio_bound +=
                std::log10(1.0 + dt * std::abs(e.state.coherence_sum() / e.state.population_imbalance()));
        }
        const double log_ratio = b.preparation_corrected.is_zero()
                                     ? -std::numeric_limits<double>::infinity()
                                     : b.preparation_corrected.log10_mag() - b.leading.log10_mag();
        CHECK(log_ratio <= log_ratio_bound + 1e-12);
    }
}

TEST_CASE("measured S_x") {
    std::mt19937_64 rng(15);
    const auto cfg = testing::random_config(rng, 5);
    const auto s0 = expectation_Sx_measured(cfg, 0.0);
    const cplx a = cfg.central.up(), b = cfg.central.down();
    CHECK(s0.value == doctest::Approx(2.0 * std::real(s0.z * a * std::conj(b))));
    CHECK(s0.error_linear == 0.0);

    const auto dead = make_config(testing::balanced(), {{testing::balanced(), std::numbers::pi / 4}}, 1, 0, 1);
    CHECK(expectation_Sx_measured(dead, 1e-3).value == doctest::Approx(1e-6).epsilon(1e-12));
}

}  // TEST_SUITE
