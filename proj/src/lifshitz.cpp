#include "casimir/lifshitz.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/constants.hpp"

namespace casimir {

namespace {

using constants::c;
using constants::hbar;
using constants::pi;

void check_cavity(const CavityConfig& cavity) {
    if (!(cavity.spacing > 0.0))
        throw std::domain_error("cavity: spacing must be positive");
    if (!(cavity.area > 0.0))
        throw std::domain_error("cavity: area must be positive");
}

// Closed-loop kernels h_n(rho) = d^n/dL^n ln(1 - rho) / (2 kappa)^0..,
// written so that the inner integrand is kappa^{1+n} h_n(rho).
double loop_kernel(int order, double rho) {
    const double denom = 1.0 - rho;
    switch (order) {
        case 0: return std::log1p(-rho);
        case 1: return 2.0 * rho / denom;
        default: return -4.0 * rho / (denom * denom);
    }
}

} // namespace

RoundTrip round_trip(const Mirror& m1, const Mirror& m2, double spacing, const Mode& mode) {
    if (!(spacing > 0.0))
        throw std::domain_error("round_trip: spacing must be positive");
    const double r1 = mirror_reflection(m1, mode);
    const double r2 = mirror_reflection(m2, mode);
    const double rho = r1 * r2 * std::exp(-2.0 * mode.kappa * spacing);
    if (std::fabs(rho) >= 1.0)
        throw std::domain_error("round_trip: |r1 r2| e^{-2 kappa L} >= 1, cavity is not passive");
    return {rho, rho / (1.0 - rho)};
}

double ideal_energy_pp(double spacing, double area) {
    if (!(spacing > 0.0) || !(area > 0.0))
        throw std::domain_error("ideal_energy_pp: spacing and area must be positive");
    return -hbar * c * pi * pi * area / (720.0 * spacing * spacing * spacing);
}

double ideal_force_pp(double spacing, double area) {
    if (!(spacing > 0.0) || !(area > 0.0))
        throw std::domain_error("ideal_force_pp: spacing and area must be positive");
    const double L2 = spacing * spacing;
    return hbar * c * pi * pi * area / (240.0 * L2 * L2);
}

namespace detail {

Estimate inner_kappa_integral(const MirrorAmplitudes& m1, const MirrorAmplitudes& m2,
                              double spacing, double xi, int order,
                              const QuadratureSpec& spec) {
    const double kappa_lo = xi / c;
    const double s = spec.inner_scale > 0.0 ? spec.inner_scale : 1.0 / spacing;
    const double rel = std::max(1e-14, 0.05 * spec.rel_tol);

    auto integrand = [&](double u) {
        const double w = 1.0 - u;
        const double kappa = kappa_lo + s * u / w;
        const double attenuation = std::exp(-2.0 * kappa * spacing);
        double sum = 0.0;
        for (Polarization pol : {Polarization::te, Polarization::tm}) {
            const double rho = m1.r(pol, kappa) * m2.r(pol, kappa) * attenuation;
            sum += loop_kernel(order, rho);
        }
        double weight = kappa * s / (w * w);
        for (int i = 0; i < order; ++i) weight *= kappa;
        return sum * weight;
    };

    return quad::integrate_unit_doubling(integrand, spec.inner_min_points,
                                         spec.inner_max_points, rel, 0.0);
}

} // namespace detail

namespace {

// E (order 0), dE/dL (order 1) or d2E/dL2 (order 2) of the plane-plane
// cavity at T = 0.  One adaptive pass over xi; the mirrors are frozen once
// per frequency node.
Estimate integrate_pp(const CavityConfig& cavity, int order, const QuadratureSpec& spec) {
    check_cavity(cavity);
    const double L = cavity.spacing;
    const double xi0 = spec.outer_scale > 0.0 ? spec.outer_scale : c / L;
    const double inner_rel = std::max(1e-14, 0.05 * spec.rel_tol);

    auto outer = [&](double t) {
        const double w = 1.0 - t;
        const double xi = xi0 * t / w;
        const MirrorAmplitudes a1(cavity.mirror1, xi);
        const MirrorAmplitudes a2(cavity.mirror2, xi);
        const Estimate inner = detail::inner_kappa_integral(a1, a2, L, xi, order, spec);
        return inner.value * xi0 / (w * w);
    };

    const Estimate raw = quad::integrate_unit_adaptive(outer, spec.rel_tol, spec.abs_tol,
                                                       spec.max_subdivisions);
    const double pref = hbar * cavity.area / (4.0 * pi * pi);
    Estimate out;
    out.value = pref * raw.value;
    out.error = pref * raw.error + std::fabs(out.value) * inner_rel;
    return out;
}

} // namespace

Estimate casimir_energy_pp(const CavityConfig& cavity, const QuadratureSpec& spec) {
    return integrate_pp(cavity, 0, spec);
}

Estimate casimir_force_pp(const CavityConfig& cavity, const QuadratureSpec& spec) {
    return integrate_pp(cavity, 1, spec);
}

Estimate energy_derivative_pp(const CavityConfig& cavity, int order, const QuadratureSpec& spec) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("energy_derivative_pp: order must be 1 or 2");
    return integrate_pp(cavity, order, spec);
}

EtaResult eta_F(const CavityConfig& cavity, const QuadratureSpec& spec) {
    const Estimate force = integrate_pp(cavity, 1, spec);
    const double ideal = ideal_force_pp(cavity.spacing, cavity.area);
    return {force.value / ideal, force.error / ideal, force.value, ideal};
}

} // namespace casimir
