// constants.hpp: CODATA 2018 constants and the Planck scales derived from them

#pragma once

#include <cmath>

namespace qevent {

// SI units throughout. T_P and l_P are derived, never hard-coded.
struct PhysicalConstants {
    double hbar{1.054571817e-34};   // J s
    double c{299792458.0};          // m / s
    double G{6.67430e-11};          // m^3 / (kg s^2)
    double mu0{1.25663706212e-6};   // N / A^2

    [[nodiscard]] double planck_time() const { return std::sqrt(hbar * G / (c * c * c * c * c)); }
    [[nodiscard]] double planck_length() const { return std::sqrt(hbar * G / (c * c * c)); }

    // T_P^{4/3}, the combination every real-clock damping exponent is built from.
    [[nodiscard]] double planck_time_4_3() const { return std::pow(planck_time(), 4.0 / 3.0); }

    static constexpr const char* version = "CODATA 2018";
};

inline const PhysicalConstants& codata() {
    static const PhysicalConstants k{};
    return k;
}

// Handy reference values for building configurations (not used by the physics code).
namespace reference {
inline constexpr double bohr_magneton = 9.2740100783e-24;  // J / T
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
}  // namespace reference

}  // namespace qevent
