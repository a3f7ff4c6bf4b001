#include "casimir/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"

namespace casimir {

namespace {

using constants::c;
using constants::hbar;
using constants::k_B;
using constants::pi;

constexpr int matsubara_block = 16;
constexpr int matsubara_cap = 200000;
constexpr double term_rel_cutoff = 1e-10;
constexpr int settled_terms = 10;

double thermal_frequency(double temperature) {
    if (!(temperature > 0.0))
        throw std::domain_error("thermal: temperature must be positive");
    return 2.0 * pi * k_B * temperature / hbar;
}

bool model_is_dissipative(const DielectricModel& model) {
    return static_response(model).divergence_power == 1;
}

bool mirror_is_dissipative(const Mirror& mirror) {
    return std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Perfect>) {
                return false;
            } else if constexpr (std::is_same_v<T, Bulk> || std::is_same_v<T, SlabMirror>) {
                return model_is_dissipative(m.model);
            } else {
                for (const Layer& l : m.layers)
                    if (model_is_dissipative(l.model)) return true;
                return m.substrate && model_is_dissipative(*m.substrate);
            }
        },
        mirror);
}

// Single-polarization variant of the inner kappa integral, needed to split
// the m = 0 term between TE and TM.
Estimate inner_kappa_integral_pol(const MirrorAmplitudes& m1, const MirrorAmplitudes& m2,
                                  double spacing, double xi, Polarization pol, int order,
                                  const QuadratureSpec& spec) {
    const double kappa_lo = xi / c;
    const double s = spec.inner_scale > 0.0 ? spec.inner_scale : 1.0 / spacing;
    const double rel = std::max(1e-14, 0.05 * spec.rel_tol);

    auto integrand = [&](double u) {
        const double w = 1.0 - u;
        const double kappa = kappa_lo + s * u / w;
        const double rho = m1.r(pol, kappa) * m2.r(pol, kappa) * std::exp(-2.0 * kappa * spacing);
        double h;
        switch (order) {
            case 0: h = std::log1p(-rho); break;
            case 1: h = 2.0 * rho / (1.0 - rho); break;
            default: h = -4.0 * rho / ((1.0 - rho) * (1.0 - rho)); break;
        }
        double weight = kappa * s / (w * w);
        for (int i = 0; i < order; ++i) weight *= kappa;
        return h * weight;
    };

    return quad::integrate_unit_doubling(integrand, spec.inner_min_points,
                                         spec.inner_max_points, rel, 0.0);
}

// Shared Matsubara driver.  order = 1 sums the force kernel, order = 0 the
// free-energy kernel; both carry the prefactor hbar omega_T A / (4 pi^2).
MatsubaraForce matsubara_sum(const CavityConfig& cavity, const ThermalConfig& thermal,
                             int order, const QuadratureSpec& spec) {
    if (!(cavity.spacing > 0.0) || !(cavity.area > 0.0))
        throw std::domain_error("cavity: spacing and area must be positive");
    const double omega_t = thermal_frequency(thermal.temperature);
    const double pref = hbar * omega_t * cavity.area / (4.0 * pi * pi);
    const double L = cavity.spacing;

    MatsubaraForce out;
    out.prescription_sensitive =
        mirror_is_dissipative(cavity.mirror1) || mirror_is_dissipative(cavity.mirror2);

    // m = 0: exact static amplitudes, half weight, split by polarization.
    {
        const MirrorAmplitudes s1 = MirrorAmplitudes::static_limit(cavity.mirror1);
        const MirrorAmplitudes s2 = MirrorAmplitudes::static_limit(cavity.mirror2);
        const Estimate te = inner_kappa_integral_pol(s1, s2, L, 0.0, Polarization::te, order, spec);
        const Estimate tm = inner_kappa_integral_pol(s1, s2, L, 0.0, Polarization::tm, order, spec);
        out.m0_tm = 0.5 * pref * tm.value;
        out.error += 0.5 * pref * tm.error;
        if (thermal.m0 == M0Prescription::half_weight_limit) {
            out.m0_te = 0.5 * pref * te.value;
            out.error += 0.5 * pref * te.error;
        } else {
            out.m0_te = 0.0;
        }
        out.value = out.m0_te + out.m0_tm;
    }

    // m >= 1 in deterministic blocks; each block is evaluated through the
    // parallel map and reduced left to right.
    int consec = 0;
    double prev_term = 0.0, last_term = 0.0;
    for (int base = 1; base <= matsubara_cap; base += matsubara_block) {
        std::vector<Estimate> block(matsubara_block);
        par::for_indexed(matsubara_block, [&](std::size_t i) {
            const double xi = (base + static_cast<double>(i)) * omega_t;
            const MirrorAmplitudes a1(cavity.mirror1, xi);
            const MirrorAmplitudes a2(cavity.mirror2, xi);
            block[i] = detail::inner_kappa_integral(a1, a2, L, xi, order, spec);
        });
        for (int i = 0; i < matsubara_block; ++i) {
            const double term = pref * block[i].value;
            out.value += term;
            out.error += pref * block[i].error;
            out.terms_used = base + i;
            prev_term = last_term;
            last_term = term;
            consec = std::fabs(term) <= term_rel_cutoff * std::fabs(out.value) ? consec + 1 : 0;
            if (consec >= settled_terms) {
                double q = prev_term != 0.0 ? std::fabs(last_term / prev_term) : 0.0;
                q = std::min(q, 0.99);
                out.error += std::fabs(last_term) * q / (1.0 - q);
                return out;
            }
        }
    }
    throw ConvergenceError("matsubara sum did not settle", out.value,
                           std::fabs(last_term) * 100.0);
}

} // namespace

MatsubaraForce matsubara_force(const CavityConfig& cavity, const ThermalConfig& thermal,
                               const QuadratureSpec& spec) {
    return matsubara_sum(cavity, thermal, 1, spec);
}

MatsubaraForce matsubara_free_energy(const CavityConfig& cavity, const ThermalConfig& thermal,
                                     const QuadratureSpec& spec) {
    return matsubara_sum(cavity, thermal, 0, spec);
}

SeriesForce series_force(const CavityConfig& cavity, const ThermalConfig& thermal,
                         const SeriesSpec& series, const QuadratureSpec& spec) {
    if (!(cavity.spacing > 0.0) || !(cavity.area > 0.0))
        throw std::domain_error("cavity: spacing and area must be positive");
    const double omega_t = thermal_frequency(thermal.temperature);
    const double L = cavity.spacing;
    const double phi_pref = cavity.area / (4.0 * pi);   // Phi = pref * inner(order 1)

    // Phi(xi) = A/(2 pi) Sum_p Int kappa^2 f dkappa, the T = 0 force density.
    auto phi = [&](double xi) -> Estimate {
        const MirrorAmplitudes a1(cavity.mirror1, xi);
        const MirrorAmplitudes a2(cavity.mirror2, xi);
        const Estimate inner = detail::inner_kappa_integral(a1, a2, L, xi, 1, spec);
        return {phi_pref * inner.value, phi_pref * inner.error};
    };

    SeriesForce out;

    // n = 0 winding with half weight: (hbar/pi) Int Phi dxi, the T = 0 force.
    {
        const Estimate f0 = casimir_force_pp(
            {cavity.mirror1, cavity.mirror2, cavity.spacing, cavity.area, 0.0}, spec);
        out.value = f0.value;
        out.error = f0.error;
    }

    // Cosine transform of Phi for one winding time x, integrated half period
    // by half period with a fixed Gauss rule; the alternating remainder is
    // folded in Euler style (half the extrapolated next lobe).
    const quad::GaussRule& rule = quad::gauss_unit(series.points_per_half_period);
    const int max_segments = 200000;
    auto winding_term = [&](double x) -> Estimate {
        double total = 0.0, err = 0.0, peak = 0.0;
        double prev_seg = 0.0, seg = 0.0;
        int k = 0;
        for (; k < max_segments; ++k) {
            const double a = k == 0 ? 0.0 : (k - 0.5) * pi / x;
            const double b = (k + 0.5) * pi / x;
            std::vector<Estimate> nodes(rule.x.size());
            par::for_indexed(nodes.size(), [&](std::size_t i) {
                nodes[i] = phi(a + (b - a) * rule.x[i]);
            });
            prev_seg = seg;
            seg = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const double xi = a + (b - a) * rule.x[i];
                seg += rule.w[i] * std::cos(xi * x) * nodes[i].value;
                err += rule.w[i] * nodes[i].error * (b - a);
            }
            seg *= b - a;
            total += seg;
            peak = std::max(peak, std::fabs(seg));
            if (k > 2 && std::fabs(seg) <= series.decay_cutoff * peak) break;
        }
        if (k >= max_segments)
            throw ConvergenceError("cosine transform did not decay", total, std::fabs(seg));
        // Euler tail: predict the next lobe from the envelope decay.
        const double q = prev_seg != 0.0 ? std::min(std::fabs(seg / prev_seg), 1.0) : 0.0;
        const double next = -seg * q;
        total += 0.5 * next;
        err += 0.5 * std::fabs(next);
        return {2.0 * total, 2.0 * err};
    };

    // The winding terms fall off as a power of n (exactly n^-4 for perfect
    // mirrors; slightly slower for real metals).  From two consecutive terms
    // estimate the local exponent p and bound the rest of the sum by the
    // integral comparison Sum_{m>n} |T_n| (n/m)^p <= |T_n| n / (p - 1).
    double prev_term = 0.0, last_term = 0.0;
    bool converged = false;
    for (int n = 1; n <= series.n_max; ++n) {
        const double x = 2.0 * pi * n / omega_t;
        const Estimate t = winding_term(x);
        const double term = hbar / pi * t.value;
        out.value += term;
        out.error += hbar / pi * t.error;
        out.terms_used = n;
        prev_term = last_term;
        last_term = term;
        if (n < 2) continue;
        if (last_term == 0.0) {
            out.tail_estimate = 0.0;
            converged = true;
            break;
        }
        if (std::fabs(last_term) >= std::fabs(prev_term)) continue;  // not yet decaying
        const double p = std::clamp(
            std::log(std::fabs(prev_term / last_term)) / std::log(double(n) / (n - 1)),
            1.5, 12.0);
        out.tail_estimate = std::fabs(last_term) * n / (p - 1.0);
        if (out.tail_estimate <= series.rel_tol * std::fabs(out.value)) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        out.converged = false;
        throw ConvergenceError("winding series tail above tolerance at n_max", out.value,
                               out.error + out.tail_estimate);
    }
    out.error += out.tail_estimate;
    return out;
}

ThermalComparison thermal_comparison(const CavityConfig& cavity, double temperature,
                                     const SeriesSpec& series, const QuadratureSpec& spec) {
    ThermalComparison out;
    out.matsubara_half_weight =
        matsubara_force(cavity, {temperature, M0Prescription::half_weight_limit}, spec);
    out.matsubara_drude_te_zero =
        matsubara_force(cavity, {temperature, M0Prescription::drude_te_zero}, spec);
    out.series = series_force(cavity, {temperature, M0Prescription::half_weight_limit},
                              series, spec);
    out.difference = out.series.value - out.matsubara_half_weight.value;
    return out;
}

} // namespace casimir
