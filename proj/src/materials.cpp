#include "casimir/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

using constants::c;
using constants::pi;

// Log-log linear interpolation of eps'' between samples; eps'' > 0 is
// guaranteed by the loader.
double interp_eps_im(const OpticalDataTable& t, double omega) {
    const auto& rows = t.rows;
    auto it = std::upper_bound(rows.begin(), rows.end(), omega,
                               [](double w, const OpticalSample& s) { return w < s.omega; });
    if (it == rows.begin()) return rows.front().eps_im;
    if (it == rows.end()) return rows.back().eps_im;
    const OpticalSample& hi = *it;
    const OpticalSample& lo = *(it - 1);
    const double f = std::log(omega / lo.omega) / std::log(hi.omega / lo.omega);
    if (lo.eps_im <= 0.0 || hi.eps_im <= 0.0)   // log-log breaks on zeros
        return lo.eps_im + f * (hi.eps_im - lo.eps_im);
    return lo.eps_im * std::exp(f * std::log(hi.eps_im / lo.eps_im));
}

// Int_0^X dw / ((w^2 + g^2)(w^2 + s^2)), partial fractions with a series
// fallback when the two poles collide.
double box_integral(double X, double g, double s) {
    auto prim = [X](double a) { return std::atan(X / a) / a; };
    const double d = s * s - g * g;
    if (std::fabs(d) > 1e-8 * s * s)
        return (prim(g) - prim(s)) / d;
    // derivative of -prim at a = g, evaluated at the midpoint scale
    const double a = 0.5 * (g + s);
    return 0.5 * (std::atan(X / a) / a + X / (a * a + X * X)) / (a * a);
}

// Fit eps'' ~ (w_max/w)^p from the last decade of the table.
double tail_exponent(const OpticalDataTable& t) {
    const auto& rows = t.rows;
    const double w_hi = rows.back().omega;
    const double w_cut = w_hi / 10.0;
    std::size_t i = rows.size() - 1;
    while (i > 0 && rows[i - 1].omega > w_cut) --i;
    if (i == rows.size() - 1) i = rows.size() - 2;
    if (rows.back().eps_im <= 0.0 || rows[i].eps_im <= 0.0)
        return 3.0;   // Drude-like default when the fit has nothing to chew on
    const double p = -std::log(rows.back().eps_im / rows[i].eps_im) /
                     std::log(w_hi / rows[i].omega);
    return std::clamp(p, 0.5, 8.0);
}

} // namespace

bool OpticalDataTable::narrow_span() const {
    return omega_max() < 100.0 * omega_min();
}

OpticalDataTable load_optical_table(std::istream& in, FrequencyUnit unit,
                                    const std::string& origin) {
    OpticalDataTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double w, e;
        if (!(row >> w)) {
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": unparsable row '" + line + "'");
        }
        if (!(row >> e))
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected two columns (frequency, Im eps)");
        if (w <= 0.0)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": frequency must be positive");
        if (e < 0.0)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": Im eps must be non-negative for a passive medium");
        if (unit == FrequencyUnit::ev) w *= constants::ev_to_rad_s;
        if (!table.rows.empty() && w <= table.rows.back().omega)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": frequencies must be strictly increasing");
        table.rows.push_back({w, e});
    }
    if (table.rows.size() < 2)
        throw ConfigError(origin + ": optical table needs at least two rows");
    return table;
}

OpticalDataTable load_optical_table(const std::string& path, FrequencyUnit unit) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open optical table");
    return load_optical_table(in, unit, path);
}

DispersionResult kramers_kronig_iw(const OpticalDataTable& table,
                                   const std::optional<Drude>& below_table,
                                   double xi) {
    if (!(xi > 0.0))
        throw std::domain_error("kramers_kronig_iw: xi must be positive");

    const double w_lo = table.omega_min();
    const double w_hi = table.omega_max();
    double sum = 0.0;

    // Analytic Drude continuation over (0, w_lo).
    if (below_table && below_table->omega_p > 0.0) {
        const double wp = below_table->omega_p;
        const double g = below_table->gamma;
        if (g > 0.0) {
            sum += (2.0 / pi) * wp * wp * g * box_integral(w_lo, g, xi);
        } else {
            // gamma = 0 is the plasma model: the whole weight sits in a
            // delta at w = 0, contributing wp^2/xi^2 exactly.
            sum += wp * wp / (xi * xi);
        }
    }

    // Across the table: trapezoid on a log grid of the interpolant.
    sum += (2.0 / pi) * quad::log_trapezoid(
        [&](double w) { return w * interp_eps_im(table, w) / (w * w + xi * xi); },
        w_lo, w_hi, 400);

    // Above the table: fitted power-law tail, integrated with the
    // substitution w = w_hi/u.
    {
        const double p = tail_exponent(table);
        const double e_hi = table.rows.back().eps_im;
        const auto& rule = quad::gauss_unit(64);
        double tail = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const double u = rule.x[i];
            tail += rule.w[i] * std::pow(u, p - 1.0) /
                    (w_hi * w_hi + xi * xi * u * u);
        }
        sum += (2.0 / pi) * e_hi * w_hi * w_hi * tail;
    }

    return {1.0 + sum, table.narrow_span()};
}

double epsilon_iw(const DielectricModel& model, double xi) {
    if (!(xi > 0.0))
        throw std::domain_error("epsilon_iw: xi must be positive "
                                "(static limits go through static_response)");
    return std::visit(
        [xi](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Plasma>) {
                return 1.0 + m.omega_p * m.omega_p / (xi * xi);
            } else if constexpr (std::is_same_v<T, Drude>) {
                return 1.0 + m.omega_p * m.omega_p / (xi * (xi + m.gamma));
            } else {
                return kramers_kronig_iw(*m.table, m.extrapolation, xi).value;
            }
        },
        model);
}

StaticResponse static_response(const DielectricModel& model) {
    return std::visit(
        [](const auto& m) -> StaticResponse {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Plasma>) {
                return {2, m.omega_p * m.omega_p, m.omega_p * m.omega_p};
            } else if constexpr (std::is_same_v<T, Drude>) {
                if (m.gamma == 0.0)
                    return {2, m.omega_p * m.omega_p, m.omega_p * m.omega_p};
                return {1, m.omega_p * m.omega_p / m.gamma, 0.0};
            } else {
                if (m.extrapolation && m.extrapolation->omega_p > 0.0) {
                    const Drude& d = *m.extrapolation;
                    if (d.gamma == 0.0)
                        return {2, d.omega_p * d.omega_p, d.omega_p * d.omega_p};
                    return {1, d.omega_p * d.omega_p / d.gamma, 0.0};
                }
                // Dielectric data from (almost) zero frequency: eps(0) is
                // finite and equals the full dispersion integral's limit.
                const OpticalDataTable& t = *m.table;
                const double eps0 =
                    kramers_kronig_iw(t, std::nullopt, 1e-6 * t.omega_min()).value;
                return {0, eps0, 0.0};
            }
        },
        model);
}

std::optional<double> plasma_wavelength(const DielectricModel& model) {
    return std::visit(
        [](const auto& m) -> std::optional<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Plasma>) {
                return 2.0 * pi * c / m.omega_p;
            } else if constexpr (std::is_same_v<T, Drude>) {
                return 2.0 * pi * c / m.omega_p;
            } else {
                if (m.extrapolation && m.extrapolation->omega_p > 0.0)
                    return 2.0 * pi * c / m.extrapolation->omega_p;
                return std::nullopt;
            }
        },
        model);
}

} // namespace casimir
