#include "casimir/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/constants.hpp"

namespace casimir {

namespace {

using constants::pi;

void check_sphere(const SphereConfig& sphere) {
    if (!(sphere.radius > 0.0) || !(sphere.spacing > 0.0))
        throw std::domain_error("sphere: radius and spacing must be positive");
    if (sphere.spacing / sphere.radius >= 1.0)
        throw std::domain_error("sphere: proximity approximation needs L/R < 1");
}

} // namespace

PsResult force_ps(const CavityConfig& cavity, const SphereConfig& sphere,
                  const QuadratureSpec& spec) {
    check_sphere(sphere);
    CavityConfig pp = cavity;
    pp.spacing = sphere.spacing;

    const Estimate energy = casimir_energy_pp(pp, spec);
    PsResult out;
    out.value = 2.0 * pi * sphere.radius * std::fabs(energy.value) / pp.area;
    out.error = 2.0 * pi * sphere.radius * energy.error / pp.area;
    if (sphere.spacing / sphere.radius > 0.01)
        out.warnings.push_back("proximity approximation marginal: L/R = " +
                               std::to_string(sphere.spacing / sphere.radius));
    return out;
}

Estimate energy_correction_ps(const std::function<double(double)>& g_per_area,
                              const SphereConfig& sphere,
                              const QuadratureSpec& spec) {
    check_sphere(sphere);
    const double L = sphere.spacing;

    // Int_L^inf g dL' with L' = L/u maps to Int_0^1 g(L/u) L/u^2 du.
    auto integrand = [&](double u) {
        return g_per_area(L / u) * L / (u * u);
    };
    const Estimate raw = quad::integrate_unit_adaptive(integrand, spec.rel_tol, spec.abs_tol,
                                                       spec.max_subdivisions);
    return {2.0 * pi * sphere.radius * raw.value, 2.0 * pi * sphere.radius * raw.error};
}

} // namespace casimir
