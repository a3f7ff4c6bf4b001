#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace casimir {

enum class FrequencyUnit { ev, rad_s };

struct OpticalSample {
    double omega;    // rad/s
    double eps_im;   // Im eps at real frequency omega
};

// Measured Im(eps) samples on a strictly increasing frequency grid.
struct OpticalDataTable {
    std::vector<OpticalSample> rows;

    double omega_min() const { return rows.front().omega; }
    double omega_max() const { return rows.back().omega; }
    // Less than two decades of coverage makes the dispersion integral
    // extrapolation-dominated; results carry a warning.
    bool narrow_span() const;
};

// Two-column CSV (frequency, Im eps); '#' comments and blank lines allowed.
OpticalDataTable load_optical_table(std::istream& in, FrequencyUnit unit,
                                    const std::string& origin = "<stream>");
OpticalDataTable load_optical_table(const std::string& path, FrequencyUnit unit);

struct Plasma {
    double omega_p;   // rad/s
};

struct Drude {
    double omega_p;   // rad/s
    double gamma;     // rad/s; gamma = 0 degenerates to the plasma model
};

// Tabulated data continued below the first sample by a Drude tail (when
// given) and above the last sample by a fitted power law.
struct Tabulated {
    std::shared_ptr<const OpticalDataTable> table;
    std::optional<Drude> extrapolation;
};

using DielectricModel = std::variant<Plasma, Drude, Tabulated>;

// eps(i xi) on the imaginary frequency axis; real and >= 1 for any passive
// medium.  xi must be positive: the static point is handled separately
// because metallic models diverge there.
double epsilon_iw(const DielectricModel& model, double xi);

struct DispersionResult {
    double value;
    bool narrow_span_warning;
};

// eps(i xi) from tabulated Im eps via the dispersion relation
//   eps(i xi) = 1 + (2/pi) Int_0^inf  w eps''(w) / (w^2 + xi^2) dw,
// split into the analytic Drude part below the table, a log-grid trapezoid
// across it, and a fitted power-law tail above it.
DispersionResult kramers_kronig_iw(const OpticalDataTable& table,
                                   const std::optional<Drude>& below_table,
                                   double xi);

// Leading behaviour of eps(i xi) for xi -> 0+, enough to evaluate every
// reflection amplitude exactly at the static point:
//   eps ~ coeff / xi^divergence_power   (power 0 means a finite eps(0)).
struct StaticResponse {
    int divergence_power;   // 0, 1 (Drude) or 2 (plasma)
    double coeff;           // eps(0) when power = 0, else the residue scale
    double xi2_eps_m1;      // lim xi^2 (eps(i xi) - 1)
};

StaticResponse static_response(const DielectricModel& model);

// 2 pi c / omega_p when the model has a plasma scale, nothing otherwise.
std::optional<double> plasma_wavelength(const DielectricModel& model);

} // namespace casimir
