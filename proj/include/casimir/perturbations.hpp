#pragma once

#include <string>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir {

// Gaussian roughness described either by its variance alone or by an
// isotropic spectrum sigma(k) (m^4) sampled on an increasing k grid, with
// a^2 = (1/2pi) Int sigma(k) k dk.
class RoughnessSpectrum {
public:
    static RoughnessSpectrum from_variance(double a_squared);
    static RoughnessSpectrum from_samples(std::vector<std::pair<double, double>> k_sigma);
    static RoughnessSpectrum load(const std::string& path);

    double variance() const;       // a^2, m^2
    // Smallest k below which 99% of the variance lives; 0 for variance-only.
    double support_k() const;
    bool has_spectrum() const { return !samples_.empty(); }

private:
    double variance_ = 0.0;
    std::vector<std::pair<double, double>> samples_;
};

struct RoughnessResult {
    double delta_E = 0.0;      // J, same sign as E (deepens binding)
    double ratio = 0.0;        // delta_E / E
    double error = 0.0;
    std::vector<std::string> warnings;
};

// Second-order PFA roughness correction dE = (E''/2) a^2 for uncorrelated
// rough plates.  Warns when the perturbative window a << min(L, lambda_P/2pi)
// or the PFA sector k L << 1 is strained.
RoughnessResult roughness_energy_pfa(const CavityConfig& cavity,
                                     const RoughnessSpectrum& roughness,
                                     const QuadratureSpec& spec);

// Ratios of the roughness sensitivity to its PFA value in the regimes where
// the asymptotic forms hold.  "<<" between scales is accepted up to
// regime_ratio; the perturbative-validity checks elsewhere use the tighter
// validity_ratio.
struct RegimeThresholds {
    double regime_ratio = 0.5;
    double validity_ratio = 0.2;
};

// a_R k by regime: 1 (k -> 0, PFA), 0.4492 L k (k^-1 << L << lambda_P/2pi),
// (14/15)(lambda_P/2pi) k (k^-1 << lambda_P/2pi << L), L k/3
// (lambda_P << k^-1 << L).  Out of every regime -> OutOfRegimeError: the
// full sensitivity function is not part of this library.
double roughness_sensitivity_ratio(double k, double spacing, double lambda_p,
                                   const RegimeThresholds& thresholds = {});

// Largest plasma wavelength among the cavity's mirror materials: the scale
// on which the worse reflector stops being perfect.  Empty when no model
// defines one (perfect mirrors, tables without a Drude tail).
std::optional<double> cavity_plasma_wavelength(const CavityConfig& cavity);

struct CorrugationSpec {
    double a1;   // m
    double a2;   // m
    double k;    // corrugation wavevector 2 pi / lambda_C, 1/m
    double b;    // lateral mismatch, m
};

struct CorrugationResult {
    double delta_E = 0.0;   // J
    double error = 0.0;
    std::vector<std::string> warnings;
};

// Crossed corrugation energy dE = a1 a2 cos(k b) E''/2 in the PFA limit
// k -> 0.  Even in b, symmetric in a1 <-> a2.
CorrugationResult lateral_energy_pfa(const CavityConfig& cavity, const CorrugationSpec& corr,
                                     const QuadratureSpec& spec);

// PFA lateral force amplitude in the plane-sphere setup,
//   F_lat = pi a1 a2 k R sin(k b) F_PP / A,
// the b-derivative of the PFA sphere-plane energy correction.
PsResult lateral_force_ps_pfa(const CorrugationSpec& corr, const SphereConfig& sphere,
                              const CavityConfig& cavity, const QuadratureSpec& spec);

} // namespace casimir
