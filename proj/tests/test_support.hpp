#pragma once

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

namespace testsup {

using namespace casimir;

// Gold-like plasma scale used throughout the suite.
inline constexpr double lambda_p = 137e-9;

inline double omega_p() { return 2.0 * constants::pi * constants::c / lambda_p; }

inline Mirror perfect_mirror() { return Perfect{}; }

inline Mirror plasma_mirror(double wp) { return Bulk{Plasma{wp}}; }

inline Mirror drude_mirror(double wp, double gamma) { return Bulk{Drude{wp, gamma}}; }

inline CavityConfig ideal_cavity(double spacing, double area = 1e-4) {
    return {Perfect{}, Perfect{}, spacing, area, 0.0};
}

inline CavityConfig plasma_cavity(double spacing, double area = 1e-4) {
    return {plasma_mirror(omega_p()), plasma_mirror(omega_p()), spacing, area, 0.0};
}

inline double ideal_energy(double spacing, double area = 1e-4) {
    using namespace constants;
    return -hbar * c * pi * pi * area / (720.0 * std::pow(spacing, 3));
}

inline double ideal_force(double spacing, double area = 1e-4) {
    using namespace constants;
    return hbar * c * pi * pi * area / (240.0 * std::pow(spacing, 4));
}

inline double rel_diff(double a, double b) {
    return std::fabs(a - b) / std::fabs(b);
}

} // namespace testsup
