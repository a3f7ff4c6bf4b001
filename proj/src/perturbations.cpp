#include "casimir/perturbations.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

using constants::pi;

// Smallest plasma wavelength present in a mirror, if any model defines one.
std::optional<double> mirror_plasma_wavelength(const Mirror& mirror) {
    std::optional<double> best;
    auto consider = [&](const DielectricModel& model) {
        const auto lp = plasma_wavelength(model);
        if (lp && (!best || *lp < *best)) best = lp;
    };
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Bulk> || std::is_same_v<T, SlabMirror>) {
                consider(m.model);
            } else if constexpr (std::is_same_v<T, Stack>) {
                for (const Layer& l : m.layers) consider(l.model);
                if (m.substrate) consider(*m.substrate);
            }
        },
        mirror);
    return best;
}

std::string ratio_str(double x) {
    std::ostringstream s;
    s.precision(3);
    s << x;
    return s.str();
}

} // namespace

std::optional<double> cavity_plasma_wavelength(const CavityConfig& cavity) {
    const auto l1 = mirror_plasma_wavelength(cavity.mirror1);
    const auto l2 = mirror_plasma_wavelength(cavity.mirror2);
    if (l1 && l2) return std::max(*l1, *l2);
    return l1 ? l1 : l2;
}

RoughnessSpectrum RoughnessSpectrum::from_variance(double a_squared) {
    if (!(a_squared >= 0.0))
        throw std::domain_error("roughness: variance must be non-negative");
    RoughnessSpectrum out;
    out.variance_ = a_squared;
    return out;
}

RoughnessSpectrum RoughnessSpectrum::from_samples(std::vector<std::pair<double, double>> k_sigma) {
    if (k_sigma.size() < 2)
        throw std::domain_error("roughness: spectrum needs at least two samples");
    for (std::size_t i = 0; i < k_sigma.size(); ++i) {
        if (!(k_sigma[i].first > 0.0) || !(k_sigma[i].second >= 0.0))
            throw std::domain_error("roughness: need k > 0 and sigma >= 0");
        if (i > 0 && !(k_sigma[i].first > k_sigma[i - 1].first))
            throw std::domain_error("roughness: k grid must be strictly increasing");
    }
    RoughnessSpectrum out;
    out.samples_ = std::move(k_sigma);
    // a^2 = (1/2pi) Int sigma(k) k dk, trapezoid on the given grid.
    double var = 0.0;
    for (std::size_t i = 0; i + 1 < out.samples_.size(); ++i) {
        const auto& [k0, s0] = out.samples_[i];
        const auto& [k1, s1] = out.samples_[i + 1];
        var += 0.5 * (s0 * k0 + s1 * k1) * (k1 - k0);
    }
    out.variance_ = var / (2.0 * pi);
    return out;
}

RoughnessSpectrum RoughnessSpectrum::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open roughness spectrum");
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream fields(line);
        double k, sigma;
        if (!(fields >> k)) continue;   // blank or comment-only line
        if (!(fields >> sigma))
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected two columns (k sigma)");
        std::string extra;
        if (fields >> extra)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": trailing field '" +
                              extra + "'");
        rows.emplace_back(k, sigma);
    }
    try {
        return from_samples(std::move(rows));
    } catch (const std::domain_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

double RoughnessSpectrum::variance() const { return variance_; }

double RoughnessSpectrum::support_k() const {
    if (samples_.empty() || variance_ <= 0.0)
        return 0.0;
    const double target = 0.99 * variance_ * 2.0 * pi;
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
        const auto& [k0, s0] = samples_[i];
        const auto& [k1, s1] = samples_[i + 1];
        const double seg = 0.5 * (s0 * k0 + s1 * k1) * (k1 - k0);
        if (cum + seg >= target && seg > 0.0)
            return k0 + (target - cum) / seg * (k1 - k0);
        cum += seg;
    }
    return samples_.back().first;
}

RoughnessResult roughness_energy_pfa(const CavityConfig& cavity,
                                     const RoughnessSpectrum& roughness,
                                     const QuadratureSpec& spec) {
    const RegimeThresholds thresholds;
    const double a2 = roughness.variance();
    const Estimate curvature = energy_derivative_pp(cavity, 2, spec);
    const Estimate energy = casimir_energy_pp(cavity, spec);

    RoughnessResult out;
    out.delta_E = 0.5 * curvature.value * a2;
    out.error = 0.5 * curvature.error * a2;
    out.ratio = energy.value != 0.0 ? out.delta_E / energy.value : 0.0;

    const double a = std::sqrt(a2);
    if (a / cavity.spacing > thresholds.validity_ratio)
        out.warnings.push_back("roughness amplitude is " + ratio_str(a / cavity.spacing) +
                               " of the spacing; second order is strained");
    if (const auto lp = cavity_plasma_wavelength(cavity)) {
        const double scale = *lp / (2.0 * pi);
        if (a / scale > thresholds.validity_ratio)
            out.warnings.push_back("roughness amplitude is " + ratio_str(a / scale) +
                                   " of the plasma depth; second order is strained");
    }
    if (roughness.has_spectrum()) {
        const double kl = roughness.support_k() * cavity.spacing;
        if (kl > thresholds.validity_ratio)
            out.warnings.push_back("spectrum support leaves the proximity sector (k L = " +
                                   ratio_str(kl) + "); the correction is a lower bound");
    }
    return out;
}

double roughness_sensitivity_ratio(double k, double spacing, double lambda_p,
                                   const RegimeThresholds& thresholds) {
    if (!(k > 0.0) || !(spacing > 0.0) || !(lambda_p >= 0.0))
        throw std::domain_error("sensitivity: need k > 0, spacing > 0, lambda_p >= 0");
    const double r = thresholds.regime_ratio;
    const double L = spacing;
    const double depth = lambda_p / (2.0 * pi);

    if (k * L <= r)
        return 1.0;                                // proximity limit
    if (1.0 <= r * k * L && depth > 0.0 && L <= r * depth)
        return 0.4492 * L * k;                     // plasmon sector
    if (depth > 0.0 && 1.0 <= r * k * depth && depth <= r * L)
        return 14.0 / 15.0 * depth * k;            // saturated sector
    if (k * lambda_p <= r && 1.0 <= r * k * L)
        return L * k / 3.0;                        // perfect-mirror sector
    throw OutOfRegimeError("no asymptotic regime at k L = " + ratio_str(k * L) +
                           ", k lambda_P = " + ratio_str(k * lambda_p));
}

CorrugationResult lateral_energy_pfa(const CavityConfig& cavity, const CorrugationSpec& corr,
                                     const QuadratureSpec& spec) {
    if (!(corr.a1 >= 0.0) || !(corr.a2 >= 0.0) || !(corr.k > 0.0))
        throw std::domain_error("corrugation: need a1, a2 >= 0 and k > 0");
    const RegimeThresholds thresholds;
    const Estimate curvature = energy_derivative_pp(cavity, 2, spec);

    CorrugationResult out;
    const double phase = std::cos(corr.k * corr.b);
    out.delta_E = 0.5 * corr.a1 * corr.a2 * phase * curvature.value;
    out.error = 0.5 * corr.a1 * corr.a2 * std::fabs(phase) * curvature.error;

    if (corr.k * cavity.spacing > thresholds.validity_ratio)
        out.warnings.push_back("corrugation leaves the proximity sector (k L = " +
                               ratio_str(corr.k * cavity.spacing) + ")");
    const double a_max = std::max(corr.a1, corr.a2);
    if (a_max / cavity.spacing > thresholds.validity_ratio)
        out.warnings.push_back("corrugation amplitude is " +
                               ratio_str(a_max / cavity.spacing) +
                               " of the spacing; second order is strained");
    return out;
}

PsResult lateral_force_ps_pfa(const CorrugationSpec& corr, const SphereConfig& sphere,
                              const CavityConfig& cavity, const QuadratureSpec& spec) {
    if (!(corr.a1 >= 0.0) || !(corr.a2 >= 0.0) || !(corr.k > 0.0))
        throw std::domain_error("corrugation: need a1, a2 >= 0 and k > 0");
    if (!(sphere.radius > 0.0) || !(sphere.spacing > 0.0))
        throw std::domain_error("sphere: radius and spacing must be positive");
    if (sphere.spacing / sphere.radius >= 1.0)
        throw std::domain_error("sphere: proximity approximation needs L/R < 1");
    const RegimeThresholds thresholds;

    CavityConfig pp = cavity;
    pp.spacing = sphere.spacing;
    const Estimate force = casimir_force_pp(pp, spec);

    PsResult out;
    const double phase = std::sin(corr.k * corr.b);
    const double pref = pi * corr.a1 * corr.a2 * corr.k * sphere.radius / pp.area;
    out.value = pref * phase * force.value;
    out.error = pref * std::fabs(phase) * force.error;

    if (sphere.spacing / sphere.radius > 0.01)
        out.warnings.push_back("proximity approximation marginal: L/R = " +
                               ratio_str(sphere.spacing / sphere.radius));
    if (corr.k * sphere.spacing > thresholds.validity_ratio)
        out.warnings.push_back("corrugation leaves the proximity sector (k L = " +
                               ratio_str(corr.k * sphere.spacing) + ")");
    const double lambda_c = 2.0 * pi / corr.k;
    if (lambda_c * lambda_c / (sphere.radius * sphere.spacing) > thresholds.validity_ratio)
        out.warnings.push_back("curvature meets corrugation: lambda_C^2 / (R L) = " +
                               ratio_str(lambda_c * lambda_c /
                                         (sphere.radius * sphere.spacing)));
    return out;
}

} // namespace casimir
