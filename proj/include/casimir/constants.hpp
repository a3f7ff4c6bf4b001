#pragma once

namespace casimir::constants {

inline constexpr double c = 299792458.0;          // m/s
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_B = 1.380649e-23;       // J/K

// Frequency conversion used throughout for optical data and config input.
// Pinned to the rounded literature value, not the CODATA-derived one, so
// that tabulated data reproduce published curves digit for digit.
inline constexpr double ev_to_rad_s = 1.519e15;   // rad/s per eV

inline constexpr double pi = 3.14159265358979323846;

} // namespace casimir::constants
