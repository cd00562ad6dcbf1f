// log_magnitude.hpp: sign + base-10 logarithm representation for numbers far
// outside the range of double (e^-K, (dtheta)^{2N}, ...)

#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qevent {

class LogMagnitude {
public:
    // Zero.
    constexpr LogMagnitude() = default;

    // sign in {-1, 0, +1}; log10_mag is ignored (stored as 0) when sign == 0.
    // log10_mag may be -inf for a nonzero value too small for even the log form.
    LogMagnitude(int sign, double log10_mag);

    static LogMagnitude zero() { return {}; }
    static LogMagnitude one() { return {1, 0.0}; }
    static LogMagnitude from_double(double x);
    static LogMagnitude from_log10(double log10_mag) { return {1, log10_mag}; }

    [[nodiscard]] int sign() const { return sign_; }
    [[nodiscard]] double log10_mag() const { return log10_mag_; }
    [[nodiscard]] bool is_zero() const { return sign_ == 0; }

    // Linear value; underflows to +-0 and overflows to +-inf like pow() would.
    [[nodiscard]] double to_double() const;
    // True when to_double() neither underflows into subnormals nor overflows.
    [[nodiscard]] bool representable() const;

    [[nodiscard]] LogMagnitude abs() const { return {sign_ == 0 ? 0 : 1, log10_mag_}; }
    [[nodiscard]] LogMagnitude pow(double exponent) const;

    friend LogMagnitude operator*(const LogMagnitude& x, const LogMagnitude& y);
    friend LogMagnitude operator/(const LogMagnitude& x, const LogMagnitude& y);
    LogMagnitude& operator*=(const LogMagnitude& y) { return *this = *this * y; }

    // Order of the represented real numbers.
    friend std::partial_ordering operator<=>(const LogMagnitude& x, const LogMagnitude& y);
    friend bool operator==(const LogMagnitude& x, const LogMagnitude& y) {
        return (x <=> y) == std::partial_ordering::equivalent;
    }

    [[nodiscard]] std::string str() const;

private:
    int sign_{0};
    double log10_mag_{0.0};
};

// Sum of two magnitudes of the same sign (log-sum-exp in base 10).
LogMagnitude add_same_sign(const LogMagnitude& x, const LogMagnitude& y);

// e^{-K}. Throws std::domain_error for non-finite K.
LogMagnitude log_exp_neg(double K);
// e^{-K} for a K that is itself only known as a LogMagnitude (K may exceed
// double range). K must be non-negative.
LogMagnitude log_exp_neg(const LogMagnitude& K);

// base^exponent. Throws std::domain_error for base <= 0.
LogMagnitude log_pow(double base, double exponent);

}  // namespace qevent
