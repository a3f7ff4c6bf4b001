#pragma once

#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

// Plane-plane cavity.  Everything in this header is strictly T = 0; the
// thermal module owns temperature > 0.
struct CavityConfig {
    Mirror mirror1;
    Mirror mirror2;
    double spacing;            // L, m
    double area;               // A, m^2
    double temperature = 0.0;  // K
};

struct RoundTrip {
    double rho;   // r1 r2 e^{-2 kappa L}
    double f;     // rho / (1 - rho), the closed-loop function
};

// Throws std::domain_error if |rho| >= 1 (non-passive input).
RoundTrip round_trip(const Mirror& m1, const Mirror& m2, double spacing, const Mode& mode);

// Ideal-mirror closed forms.  Energy is negative (binding); force is
// positive (attraction), equal to dE/dL.
double ideal_energy_pp(double spacing, double area);
double ideal_force_pp(double spacing, double area);

// Casimir energy of the cavity,
//   E = hbar A/(4 pi^2) Sum_p Int_0^inf dxi Int_{xi/c}^inf kappa dkappa ln(1 - rho),
// evaluated over (xi, kappa) with rational substitutions scaled by the
// cavity frequency c/L.  Negative for any passive pair of mirrors.
Estimate casimir_energy_pp(const CavityConfig& cavity, const QuadratureSpec& spec);

// Attractive force F = dE/dL > 0 (same integral with the kernel
// 2 kappa^2 rho/(1-rho)).
Estimate casimir_force_pp(const CavityConfig& cavity, const QuadratureSpec& spec);

// d^n E / dL^n for order 1 or 2, from the analytic L-derivatives of the
// integrand (no finite differences).  Order 1 equals the force; order 2 is
// negative for attractive cavities (E'' = 12 E / L^2 for ideal mirrors).
Estimate energy_derivative_pp(const CavityConfig& cavity, int order, const QuadratureSpec& spec);

struct EtaResult {
    double value;          // F / F_ideal at the same geometry
    double error;
    double force;          // numerator, N
    double force_ideal;    // denominator, N
};

// Finite-conductivity reduction factor of the force.
EtaResult eta_F(const CavityConfig& cavity, const QuadratureSpec& spec);

namespace detail {

// Sum over polarizations of Int_{xi/c}^inf kappa^{1+order} h_order(rho) dkappa
// where h_0 = ln(1-rho), h_1 = 2 rho/(1-rho), h_2 = -4 rho/(1-rho)^2.
// xi = 0 uses the static amplitudes.  Building block shared with thermal.
Estimate inner_kappa_integral(const MirrorAmplitudes& m1, const MirrorAmplitudes& m2,
                              double spacing, double xi, int order,
                              const QuadratureSpec& spec);

} // namespace detail
} // namespace casimir
