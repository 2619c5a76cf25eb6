#pragma once

#include <numbers>

// Fundamental constants, SI units, CODATA 2018.
namespace ncforce::constants {

inline constexpr double pi = std::numbers::pi_v<double>;

inline constexpr double c = 299792458.0;              // speed of light, m/s (exact)
inline constexpr double hbar = 1.054571817e-34;       // reduced Planck constant, J s
inline constexpr double eps0 = 8.8541878128e-12;      // vacuum permittivity, C^2 N^-1 m^-2
inline constexpr double e_charge = 1.602176634e-19;   // elementary charge, C (exact)
inline constexpr double a0 = 5.29177210903e-11;       // Bohr radius, m

inline constexpr double m_proton = 1.67262192369e-27; // kg
inline constexpr double m_electron = 9.1093837015e-31; // kg

} // namespace ncforce::constants
