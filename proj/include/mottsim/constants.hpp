#pragma once

namespace mottsim::constants {

inline constexpr double boltzmann_ev = 8.617333262e-5;  // eV/K
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
// 1 F/m^2 expressed in uF/cm^2
inline constexpr double farad_per_m2_to_uf_per_cm2 = 100.0;

}  // namespace mottsim::constants
