#pragma once

#include "casimir/lifshitz.hpp"

namespace casimir {

// The m = 0 Matsubara term is the controversial point for dissipative
// mirrors.  half_weight_limit uses the true xi -> 0+ limit per polarization
// (which is already 0 for Drude TE); drude_te_zero forces the TE m = 0 term
// to zero for every model.  Neither choice is silently preferred: the
// comparison report shows the isolated term under both.
enum class M0Prescription { half_weight_limit, drude_te_zero };

struct ThermalConfig {
    double temperature;   // K, > 0
    M0Prescription m0 = M0Prescription::half_weight_limit;
};

struct SeriesSpec {
    int n_max = 32;                  // exponential-series order cap
    int points_per_half_period = 16; // Gauss order between cosine zeros
    double decay_cutoff = 1e-12;     // stop marching when phi drops below this x peak
    double rel_tol = 1e-6;           // stop once the winding tail bound drops below this x |sum|
};

struct MatsubaraForce {
    double value = 0.0;            // N
    double error = 0.0;            // tail bound + inner-integral estimates
    int terms_used = 0;            // highest m evaluated (inclusive)
    double m0_te = 0.0;            // isolated m = 0 TE contribution, N
    double m0_tm = 0.0;            // isolated m = 0 TM contribution, N
    bool prescription_sensitive = false;  // a dissipative mirror is present
};

// Lifshitz force as a Matsubara sum,
//   F = (hbar omega_T / pi) Sum'_m Phi(m omega_T),  omega_T = 2 pi k_B T/hbar,
// where Phi(xi) = A/(2 pi) Sum_p Int kappa^2 f dkappa and the primed sum
// halves the m = 0 term.  Terms are evaluated in deterministic blocks; the
// sum stops once 10 consecutive terms fall below 1e-10 relative, and a
// geometric bound on the discarded tail enters the error.
MatsubaraForce matsubara_force(const CavityConfig& cavity, const ThermalConfig& thermal,
                               const QuadratureSpec& spec);

// Companion free energy (same sum over ln(1 - rho) with weight k_B T);
// dF/dL reproduces matsubara_force.
MatsubaraForce matsubara_free_energy(const CavityConfig& cavity, const ThermalConfig& thermal,
                                     const QuadratureSpec& spec);

struct SeriesForce {
    double value = 0.0;       // N
    double error = 0.0;
    int terms_used = 0;       // highest n evaluated (inclusive)
    double tail_estimate = 0.0;
    bool converged = true;
};

// The same force as a series over imaginary-time windings,
//   F = (hbar/pi) Sum'_n PhiT(2 pi n / omega_T),
//   PhiT(x) = 2 Int_0^inf cos(xi x) Phi(xi) dxi.
// n = 0 reproduces the T = 0 force; each n >= 1 is an oscillatory cosine
// transform integrated between consecutive zeros with the alternating tail
// folded in Euler style.  The winding terms decay polynomially (the cosine
// transform of a half-line function is power-law in x), so the sum stops
// when a local power-law bound on the remaining tail falls below rel_tol of
// the accumulated force; the bound enters the error.  Throws
// ConvergenceError when the bound is still above tolerance at n_max.
SeriesForce series_force(const CavityConfig& cavity, const ThermalConfig& thermal,
                         const SeriesSpec& series, const QuadratureSpec& spec);

struct ThermalComparison {
    MatsubaraForce matsubara_half_weight;
    MatsubaraForce matsubara_drude_te_zero;
    SeriesForce series;
    double difference = 0.0;   // series - matsubara(half_weight_limit)
};

ThermalComparison thermal_comparison(const CavityConfig& cavity, double temperature,
                                     const SeriesSpec& series, const QuadratureSpec& spec);

} // namespace casimir
