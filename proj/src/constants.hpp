#ifndef QGRAV_CONSTANTS_HPP
#define QGRAV_CONSTANTS_HPP

namespace qgrav::constants {

// CODATA-2018. All modules read from this table so that cross-module
// numeric identities hold to machine precision.
inline constexpr double gravitational_constant = 6.67430e-11; // m^3 kg^-1 s^-2
inline constexpr double speed_of_light = 299792458.0;         // m/s
inline constexpr double hbar = 1.054571817e-34;               // J s

// Julian year; calendar conventions differ below the 0.1% level.
inline constexpr double julian_year_s = 31557600.0;

} // namespace qgrav::constants

#endif
