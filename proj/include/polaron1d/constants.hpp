#pragma once

namespace polaron1d::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

// AME2016 atomic masses
inline constexpr double mass_rb87 = 86.909180527 * atomic_mass_unit;  // kg
inline constexpr double mass_k41 = 40.96182526 * atomic_mass_unit;    // kg

// Olshanii confinement-renormalization constant |zeta(1/2)|/sqrt(2)
inline constexpr double olshanii_c = 1.0326;

}  // namespace polaron1d::constants
