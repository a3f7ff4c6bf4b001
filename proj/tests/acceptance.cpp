// Acceptance runner: one line per criterion, exit code = number of failures.
// Each criterion states its tolerance and its wall-clock budget inline; a
// value outside tolerance prints FAIL with the measured numbers rather than
// stopping the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "casimir/perturbations.hpp"
#include "casimir/thermal.hpp"
#include "property_suite.hpp"
#include "test_support.hpp"

using namespace casimir;
using testsup::lambda_p;
using testsup::rel_diff;

namespace {

int failures = 0;
int criterion_no = 0;

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
    ++criterion_no;
    if (!pass) ++failures;
    std::printf("%s criterion %2d: %s - %s (%.2f s)\n", pass ? "PASS" : "FAIL", criterion_no,
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
}

void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = body();
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(name, pass, detail, seconds);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

} // namespace

int main() {
    const QuadratureSpec spec;

    run("ideal-mirror energy matches the closed form to 1e-6, under 1 s per point", [&] {
        double worst_dev = 0.0, worst_time = 0.0;
        for (double L : {1e-7, 1e-6, 1e-5}) {
            const auto t0 = std::chrono::steady_clock::now();
            const Estimate e = casimir_energy_pp(testsup::ideal_cavity(L), spec);
            const double dt =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            worst_dev = std::max(worst_dev, rel_diff(e.value, testsup::ideal_energy(L)));
            worst_time = std::max(worst_time, dt);
        }
        return std::make_pair(worst_dev <= 1e-6 && worst_time < 1.0,
                              fmt("max rel dev %.2e, slowest point %.2f s", worst_dev,
                                  worst_time));
    });

    run("headline force, perfect mirrors, 1 um gap, 1 cm^2: closed form to 1e-6", [&] {
        const Estimate f = casimir_force_pp(testsup::ideal_cavity(1e-6, 1e-4), spec);
        const double dev = rel_diff(f.value, testsup::ideal_force(1e-6, 1e-4));
        return std::make_pair(dev <= 1e-6,
                              fmt("force %.6e N (~0.130 uN), rel dev %.2e", f.value, dev));
    });

    run("short-separation slope eta/(L/lambda_P) = 1.193 within 2% at 1e-3, under 10 s", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const double ratio = 1e-3;
        const EtaResult eta = eta_F(testsup::plasma_cavity(ratio * lambda_p), spec);
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double alpha = eta.value / ratio;
        return std::make_pair(std::fabs(alpha - 1.193) <= 0.02 * 1.193 && dt < 10.0,
                              fmt("alpha = %.5f vs 1.193", alpha));
    });

    run("long-separation recovery: eta >= 0.99 at L/lambda_P = 1e3", [&] {
        const EtaResult eta = eta_F(testsup::plasma_cavity(1e3 * lambda_p), spec);
        return std::make_pair(eta.value >= 0.99, fmt("eta = %.5f", eta.value));
    });

    run("plasma vs weakly dissipative eta within 2e-2 across [0.1, 10] lambda_P", [&] {
        const double wp = testsup::omega_p();
        const Mirror drude = Bulk{Drude{wp, 4e-3 * wp}};
        double worst = 0.0, worst_at = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double r = 0.1 * std::pow(100.0, i / 19.0);
            const double L = r * lambda_p;
            const double ep = eta_F(testsup::plasma_cavity(L), spec).value;
            const double ed = eta_F({drude, drude, L, 1e-4, 0.0}, spec).value;
            if (std::fabs(ep - ed) > worst) {
                worst = std::fabs(ep - ed);
                worst_at = r;
            }
        }
        return std::make_pair(worst < 2e-2,
                              fmt("max |eta_plasma - eta_drude| = %.2e at L = %.2f lambda_P",
                                  worst, worst_at));
    });

    run("Matsubara sum vs winding series within 0.1% (plasma, 300 K, 1 um), under 60 s", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const CavityConfig cav = testsup::plasma_cavity(1e-6);
        const ThermalConfig th{300.0, M0Prescription::half_weight_limit};
        const MatsubaraForce mf = matsubara_force(cav, th, spec);
        const SeriesForce sf = series_force(cav, th, SeriesSpec{}, spec);
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double dev = rel_diff(sf.value, mf.value);
        return std::make_pair(dev <= 1e-3 && dt < 60.0,
                              fmt("rel diff %.2e in %.1f s", dev, dt));
    });

    run("thick slab converges to bulk (1e-3 at 5 lambda_P); slab = composed interfaces (1e-12)",
        [&] {
            const double wp = testsup::omega_p();
            const Plasma metal{wp};
            double worst_bulk = 0.0, worst_compose = 0.0;
            int modes = 0;
            for (int i = 0; i < 5; ++i) {
                const double xi = 0.01 * wp * std::pow(1e4, i / 4.0);
                for (double k :
                     {0.0, 0.3 / lambda_p, 1.0 / lambda_p, 3.0 / lambda_p, 10.0 / lambda_p}) {
                    for (auto pol : {Polarization::te, Polarization::tm}) {
                        const Mode m = mode_from_xi_k(xi, k, pol);
                        ++modes;
                        worst_bulk = std::max(
                            worst_bulk, std::fabs(slab_reflection(metal, 5.0 * lambda_p, m) -
                                                  fresnel_bulk(metal, m)));
                        const double eps = epsilon_iw(metal, xi);
                        const double km = std::sqrt(
                            m.kappa * m.kappa +
                            (eps - 1.0) * xi * xi / (constants::c * constants::c));
                        const ScatterPair composed = stack_compose(
                            interface_pair(std::nullopt, metal, m),
                            interface_pair(metal, std::nullopt, m), std::exp(-km * lambda_p));
                        worst_compose = std::max(
                            worst_compose,
                            std::fabs(composed.r - slab_reflection(metal, lambda_p, m)));
                    }
                }
            }
            return std::make_pair(worst_bulk <= 1e-3 && worst_compose <= 1e-12,
                                  fmt("%.0f modes: max slab-bulk %.2e, max composition %.2e",
                                      double(modes), worst_bulk, worst_compose));
        });

    run("curvature term reproduces a brute-force averaged shift within 1% at h = 0.001 L", [&] {
        QuadratureSpec tight = spec;
        tight.rel_tol = 1e-10;
        const double L = 2e-7, h = 1e-3 * L;
        const double e0 = casimir_energy_pp(testsup::plasma_cavity(L), tight).value;
        double mean = 0.0;
        for (int j = 0; j < 16; ++j) {
            const double delta = h * std::cos(2.0 * constants::pi * j / 16.0);
            mean += casimir_energy_pp(testsup::plasma_cavity(L + delta), tight).value;
        }
        const double brute = mean / 16.0 - e0;
        const RoughnessResult taylor = roughness_energy_pfa(
            testsup::plasma_cavity(L), RoughnessSpectrum::from_variance(0.5 * h * h), tight);
        const double dev = rel_diff(taylor.delta_E, brute);
        return std::make_pair(dev <= 0.01, fmt("rel dev %.2e", dev));
    });

    run("sphere-plane lateral force amplitude = 0.28 pN within 20%, under 30 s", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const double L = 200e-9, R = 100e-6, k = 5.2e6;
        const CorrugationSpec corr{59e-9, 8e-9, k, 0.5 * constants::pi / k};
        const PsResult f =
            lateral_force_ps_pfa(corr, {R, L}, testsup::plasma_cavity(L), spec);
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double pn = f.value * 1e12;
        const bool in_band = std::fabs(pn - 0.28) <= 0.2 * 0.28 && dt < 30.0;
        // The proximity composition used here is exact in its own terms; the
        // 0.28 pN target carries beyond-proximity physics (k L = 1.04), which
        // this second-order treatment overshoots at the nominal 200 nm gap.
        // The same pipeline lands in band at a 221 nm gap (~0.267 pN).
        const PsResult shifted = lateral_force_ps_pfa(
            {corr.a1, corr.a2, k, 0.5 * constants::pi / k}, {R, 221e-9},
            testsup::plasma_cavity(221e-9), spec);
        return std::make_pair(
            in_band, fmt("amplitude %.3f pN vs 0.28 pN +-20%% (at 221 nm: %.3f pN)", pn,
                         shifted.value * 1e12));
    });

    run("roughness sensitivity hits the exact asymptotic constants", [&] {
        double worst = 0.0;
        const double depth = lambda_p / (2.0 * constants::pi);
        worst = std::max(worst, rel_diff(roughness_sensitivity_ratio(5e8, 1e-8, lambda_p),
                                         0.4492 * 1e-8 * 5e8));
        worst = std::max(worst, rel_diff(roughness_sensitivity_ratio(1e8, 2e-6, lambda_p),
                                         14.0 / 15.0 * depth * 1e8));
        worst = std::max(worst, rel_diff(roughness_sensitivity_ratio(2e6, 2e-6, lambda_p),
                                         2e6 * 2e-6 / 3.0));
        return std::make_pair(worst <= 1e-12, fmt("max rel dev %.1e", worst));
    });

    run("200 randomized cavities satisfy every structural invariant", [&] {
        const auto failures_list = testsup::run_property_samples(200);
        std::string detail = fmt("%.0f violations", double(failures_list.size()));
        for (std::size_t i = 0; i < failures_list.size() && i < 3; ++i)
            detail += "; " + failures_list[i];
        return std::make_pair(failures_list.empty(), detail);
    });

    std::printf("%d of %d criteria pass\n", criterion_no - failures, criterion_no);
    return failures;
}
