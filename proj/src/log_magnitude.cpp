#include "qevent/log_magnitude.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qevent {

namespace {
constexpr double kMinNormalLog10 = -307.0;  // ~ log10(DBL_MIN) rounded inward
constexpr double kMaxLog10 = 308.0;
}  // namespace

LogMagnitude::LogMagnitude(int sign, double log10_mag) {
    if (sign < -1 || sign > 1) {
        throw std::invalid_argument("LogMagnitude: sign must be -1, 0 or +1");
    }
    if (sign != 0 && (std::isnan(log10_mag) || log10_mag == std::numeric_limits<double>::infinity())) {
        throw std::domain_error("LogMagnitude: log10 magnitude must be finite or -inf");
    }
    sign_ = sign;
    log10_mag_ = sign == 0 ? 0.0 : log10_mag;
}

LogMagnitude LogMagnitude::from_double(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("LogMagnitude::from_double: non-finite input");
    }
    if (x == 0.0) return {};
    return {x > 0 ? 1 : -1, std::log10(std::abs(x))};
}

double LogMagnitude::to_double() const {
    if (sign_ == 0) return 0.0;
    return sign_ * std::pow(10.0, log10_mag_);
}

bool LogMagnitude::representable() const {
    return sign_ == 0 || (log10_mag_ >= kMinNormalLog10 && log10_mag_ <= kMaxLog10);
}

LogMagnitude LogMagnitude::pow(double exponent) const {
    if (sign_ == 0) {
        if (exponent <= 0) throw std::domain_error("LogMagnitude::pow: 0 to a non-positive power");
        return {};
    }
    if (sign_ < 0) throw std::domain_error("LogMagnitude::pow: negative base");
    return {1, exponent * log10_mag_};
}

LogMagnitude operator*(const LogMagnitude& x, const LogMagnitude& y) {
    if (x.sign_ == 0 || y.sign_ == 0) return {};
    return {x.sign_ * y.sign_, x.log10_mag_ + y.log10_mag_};
}

LogMagnitude operator/(const LogMagnitude& x, const LogMagnitude& y) {
    if (y.sign_ == 0) throw std::domain_error("LogMagnitude: division by zero");
    if (x.sign_ == 0) return {};
    return {x.sign_ * y.sign_, x.log10_mag_ - y.log10_mag_};
}

std::partial_ordering operator<=>(const LogMagnitude& x, const LogMagnitude& y) {
    if (x.sign_ != y.sign_) return x.sign_ <=> y.sign_;
    if (x.sign_ == 0) return std::partial_ordering::equivalent;
    if (x.sign_ > 0) return x.log10_mag_ <=> y.log10_mag_;
    return y.log10_mag_ <=> x.log10_mag_;
}

std::string LogMagnitude::str() const {
    if (sign_ == 0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s10^(%.6f)", sign_ < 0 ? "-" : "", log10_mag_);
    return buf;
}

LogMagnitude add_same_sign(const LogMagnitude& x, const LogMagnitude& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.sign() != y.sign()) throw std::invalid_argument("add_same_sign: operands differ in sign");
    const double hi = std::max(x.log10_mag(), y.log10_mag());
    const double lo = std::min(x.log10_mag(), y.log10_mag());
    if (lo == -std::numeric_limits<double>::infinity()) return {x.sign(), hi};
    return {x.sign(), hi + std::log10(1.0 + std::pow(10.0, lo - hi))};
}

LogMagnitude log_exp_neg(double K) {
    if (!std::isfinite(K)) throw std::domain_error("log_exp_neg: K must be finite");
    return {1, -K * std::numbers::log10e};
}

LogMagnitude log_exp_neg(const LogMagnitude& K) {
    if (K.sign() < 0) throw std::domain_error("log_exp_neg: K must be non-negative");
    if (K.is_zero()) return LogMagnitude::one();
    // K * log10(e) may overflow to inf; -inf is the documented "beyond log range" value.
    const double exponent = std::pow(10.0, K.log10_mag() + std::log10(std::numbers::log10e));
    return {1, -exponent};
}

LogMagnitude log_pow(double base, double exponent) {
    if (!(base > 0.0) || !std::isfinite(base)) throw std::domain_error("log_pow: base must be positive");
    if (!std::isfinite(exponent)) throw std::domain_error("log_pow: exponent must be finite");
    return {1, exponent * std::log10(base)};
}

}  // namespace qevent
