#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qevent/log_magnitude.hpp"

using qevent::LogMagnitude;

TEST_SUITE("log_magnitude") {

TEST_CASE("exp(-K) in log form") {
    CHECK(qevent::log_exp_neg(0.0) == LogMagnitude::one());
    CHECK(qevent::log_exp_neg(0.0).log10_mag() == 0.0);

    const auto five = qevent::log_exp_neg(std::log(10.0) * 5.0);
    CHECK(five.sign() == 1);
    CHECK(five.log10_mag() == doctest::Approx(-5.0).epsilon(1e-14));

    // -300 log10(e), evaluated at 50 digits.
    const auto k300 = qevent::log_exp_neg(300.0);
    CHECK(k300.log10_mag() == doctest::Approx(-130.28834457097554829).epsilon(1e-15));
    CHECK(k300.representable());

    CHECK_THROWS_AS(qevent::log_exp_neg(std::numeric_limits<double>::infinity()), std::domain_error);
    CHECK_THROWS_AS(qevent::log_exp_neg(std::nan("")), std::domain_error);
}

TEST_CASE("exp(-K) for K beyond double range") {
    const auto k = LogMagnitude::from_log10(400.0);
    const auto s = qevent::log_exp_neg(k);
    CHECK(s.sign() == 1);
    CHECK(std::isinf(s.log10_mag()));
    CHECK(s.log10_mag() < 0);
    CHECK(s > LogMagnitude::zero());
    CHECK(s < LogMagnitude::from_log10(-1e300));

    const auto moderate = qevent::log_exp_neg(LogMagnitude::from_double(1e6));
    CHECK(moderate.log10_mag() == doctest::Approx(-1e6 * std::log10(std::exp(1.0))).epsilon(1e-14));
}

TEST_CASE("powers") {
    CHECK(qevent::log_pow(1e-62, 2.0).log10_mag() == doctest::Approx(-124.0).epsilon(1e-15));
    CHECK(qevent::log_pow(1.0, 17.0).log10_mag() == 0.0);
    CHECK(qevent::log_pow(1.0, 1e9) == LogMagnitude::one());
    // 40 log10(0.5), evaluated at 50 digits.
    CHECK(qevent::log_pow(0.5, 40.0).log10_mag() == doctest::Approx(-12.041199826559247809).epsilon(1e-15));
    CHECK_THROWS_AS(qevent::log_pow(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(qevent::log_pow(-2.0, 2.0), std::domain_error);
}

TEST_CASE("construction and conversion") {
    CHECK(LogMagnitude::from_double(0.0).is_zero());
    CHECK(LogMagnitude::from_double(-250.0).sign() == -1);
    CHECK(LogMagnitude::from_double(-250.0).to_double() == doctest::Approx(-250.0));
    CHECK_THROWS(LogMagnitude::from_double(std::numeric_limits<double>::infinity()));
    CHECK_THROWS(LogMagnitude(2, 0.0));
    CHECK_THROWS(LogMagnitude(1, std::nan("")));
    CHECK_FALSE(LogMagnitude::from_log10(-400.0).representable());
    CHECK(LogMagnitude::from_log10(-400.0).to_double() == 0.0);
    CHECK(LogMagnitude::from_log10(-100.0).representable());
}

TEST_CASE("ordering follows the represented reals") {
    const LogMagnitude neg_big{-1, 5.0}, neg_small{-1, -5.0}, zero{}, pos_small{1, -5.0}, pos_big{1, 5.0};
    CHECK(neg_big < neg_small);
    CHECK(neg_small < zero);
    CHECK(zero < pos_small);
    CHECK(pos_small < pos_big);
    CHECK(LogMagnitude(0, 123.0) == zero);
}

TEST_CASE("property: arithmetic agrees with doubles in range") {
    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-100, 100);
    for (int i = 0; i < 2000; ++i) {
        const double x = mant(rng) * std::pow(10.0, expo(rng));
        const double y = mant(rng) * std::pow(10.0, expo(rng));
        const auto lx = LogMagnitude::from_double(x);
        const auto ly = LogMagnitude::from_double(y);
        CHECK((lx * ly).to_double() == doctest::Approx(x * y).epsilon(1e-12));
        if (y != 0.0) CHECK((lx / ly).to_double() == doctest::Approx(x / y).epsilon(1e-12));
        CHECK(((lx <=> ly) == (x <=> y)));
        if ((x > 0) == (y > 0)) {
            CHECK(qevent::add_same_sign(lx, ly).to_double() == doctest::Approx(x + y).epsilon(1e-12));
        }
    }
}

}  // TEST_SUITE
