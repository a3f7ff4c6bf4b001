#pragma once

#include <functional>
#include <string>
#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir {

struct SphereConfig {
    double radius;    // R, m
    double spacing;   // L, distance of closest approach, m
};

struct PsResult {
    double value = 0.0;
    double error = 0.0;
    std::vector<std::string> warnings;
};

// Proximity-force sphere-plane force, F_PS = 2 pi R |E_PP| / A, positive
// for attraction.  Requires L << R: L/R >= 1 is a domain error, L/R > 0.01
// earns a validity warning.
PsResult force_ps(const CavityConfig& cavity, const SphereConfig& sphere,
                  const QuadratureSpec& spec);

// PFA transcription of a plane-plane energy correction per area to the
// sphere-plane geometry:
//   dE_PS(L) = 2 pi R Int_L^inf g(L') dL',
// evaluated with the substitution L' = L/u.  g must decay faster than 1/L'
// (every Casimir quantity here does).
Estimate energy_correction_ps(const std::function<double(double)>& g_per_area,
                              const SphereConfig& sphere,
                              const QuadratureSpec& spec);

} // namespace casimir
