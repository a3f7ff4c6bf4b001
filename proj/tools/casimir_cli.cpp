#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "casimir/config.hpp"
#include "casimir/constants.hpp"
#include "casimir/parallel.hpp"

using namespace casimir;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

// One CLI invocation: configuration, computed body lines, and the output
// sink.  The '#' header (verb plus the resolved configuration) is assembled
// at flush time, after every default has been consumed.
struct Run {
    std::string config_path;
    std::string out_path;
    double rel_tol = 0.0;
    int threads = 0;

    std::string verb;
    ConfigFile cfg;
    std::ostringstream body;

    void load(const std::string& v) {
        verb = v;
        cfg = ConfigFile::load(config_path);
        par::set_max_threads(threads < 0 ? 0 : threads);
    }

    QuadratureSpec quadrature() {
        QuadratureSpec spec = config_quadrature(cfg);
        if (rel_tol > 0.0) {
            spec.rel_tol = rel_tol;
            cfg.note("quadrature.rel_tol", rel_tol);
        }
        return spec;
    }

    void line(const std::string& key, double v) { body << key << " = " << fmt(v) << "\n"; }
    void line(const std::string& key, const std::string& v) { body << key << " = " << v << "\n"; }
    void line(const std::string& key, int v) { body << key << " = " << v << "\n"; }
    void comment(const std::string& s) { body << "# " << s << "\n"; }
    void warnings(const std::vector<std::string>& ws) {
        for (const auto& w : ws) comment("warning: " + w);
    }
    void row(const std::vector<double>& vs) {
        for (std::size_t i = 0; i < vs.size(); ++i)
            body << (i ? "," : "") << fmt(vs[i]);
        body << "\n";
    }

    void flush() {
        std::string path = out_path;
        if (path.empty() && cfg.has("output.path"))
            path = cfg.get_string("output.path");
        if (!path.empty())
            cfg.note("output.path", path);

        std::ostringstream full;
        full << "# casimir " << verb << "\n";
        for (const auto& [k, v] : cfg.resolved())
            full << "# " << k << " = " << v << "\n";
        full << body.str();

        if (path.empty()) {
            std::cout << full.str();
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw ConfigError(path + ": cannot open output file");
        out << full.str();
        out.flush();
        if (!out)
            throw std::runtime_error(path + ": write failed");
    }
};

double sphere_force_from_free_energy(double free_energy, double radius, double area) {
    return 2.0 * constants::pi * radius * std::fabs(free_energy) / area;
}

void emit_matsubara(Run& run, const std::string& prefix, const std::string& unit,
                    const MatsubaraForce& f) {
    run.line(prefix + "_" + unit, f.value);
    run.line(prefix + "_error_" + unit, f.error);
    run.line(prefix + "_terms", f.terms_used);
    run.line(prefix + "_m0_te_" + unit, f.m0_te);
    run.line(prefix + "_m0_tm_" + unit, f.m0_tm);
}

void run_force(Run& run, bool energy_mode) {
    run.load(energy_mode ? "energy" : "force");
    const QuadratureSpec spec = run.quadrature();
    SceneConfig scene = config_scene(run.cfg, true);
    const GeometryConfig geo = config_geometry(run.cfg);
    const bool thermal_run = scene.temperature > 0.0;
    ThermalConfig thermal{scene.temperature, M0Prescription::half_weight_limit};
    if (thermal_run)
        thermal.m0 = config_m0(run.cfg);

    if (scene.sweep) {
        std::string header = energy_mode
            ? (thermal_run ? "spacing_m,free_energy_j,free_energy_error_j"
                           : "spacing_m,energy_j,energy_error_j")
            : (thermal_run ? "spacing_m,force_n,force_error_n"
                           : "spacing_m,force_n,force_error_n,eta_f");
        if (!energy_mode && geo.plane_sphere)
            header += ",force_ps_n";
        run.body << header << "\n";
        for (double L : sweep_points(*scene.sweep)) {
            const CavityConfig cavity = scene.cavity_at(L);
            std::vector<double> cols{L};
            if (energy_mode) {
                Estimate e;
                if (thermal_run) {
                    const MatsubaraForce fe = matsubara_free_energy(cavity, thermal, spec);
                    e = {fe.value, fe.error};
                } else {
                    e = casimir_energy_pp(cavity, spec);
                }
                cols.push_back(e.value);
                cols.push_back(e.error);
            } else if (thermal_run) {
                const MatsubaraForce f = matsubara_force(cavity, thermal, spec);
                cols.push_back(f.value);
                cols.push_back(f.error);
                if (geo.plane_sphere) {
                    const MatsubaraForce fe = matsubara_free_energy(cavity, thermal, spec);
                    cols.push_back(sphere_force_from_free_energy(fe.value, geo.radius, cavity.area));
                }
            } else {
                const EtaResult eta = eta_F(cavity, spec);
                cols.push_back(eta.force);
                cols.push_back(eta.error * eta.force_ideal);
                cols.push_back(eta.value);
                if (geo.plane_sphere) {
                    const PsResult ps = force_ps(cavity, {geo.radius, L}, spec);
                    cols.push_back(ps.value);
                }
            }
            run.row(cols);
        }
        run.flush();
        return;
    }

    const double L = *scene.spacing;
    const CavityConfig cavity = scene.cavity_at(L);
    run.line("spacing_m", L);
    run.line("area_m2", cavity.area);
    run.line("temperature_k", cavity.temperature);

    if (energy_mode) {
        if (thermal_run) {
            const MatsubaraForce e = matsubara_free_energy(cavity, thermal, spec);
            emit_matsubara(run, "free_energy", "j", e);
            run.line("m0_prescription", thermal.m0 == M0Prescription::drude_te_zero
                                            ? std::string("drude_te_zero")
                                            : std::string("half_weight_limit"));
            run.line("prescription_sensitive", std::string(e.prescription_sensitive ? "true" : "false"));
        } else {
            const Estimate e = casimir_energy_pp(cavity, spec);
            run.line("energy_j", e.value);
            run.line("energy_error_j", e.error);
            run.line("energy_ideal_j", ideal_energy_pp(L, cavity.area));
        }
        run.flush();
        return;
    }

    if (thermal_run) {
        const MatsubaraForce f = matsubara_force(cavity, thermal, spec);
        emit_matsubara(run, "force", "n", f);
        run.line("m0_prescription", thermal.m0 == M0Prescription::drude_te_zero
                                        ? std::string("drude_te_zero")
                                        : std::string("half_weight_limit"));
        run.line("prescription_sensitive", std::string(f.prescription_sensitive ? "true" : "false"));
        if (geo.plane_sphere) {
            const MatsubaraForce fe = matsubara_free_energy(cavity, thermal, spec);
            run.line("sphere_radius_m", geo.radius);
            run.line("force_ps_n",
                     sphere_force_from_free_energy(fe.value, geo.radius, cavity.area));
        }
    } else {
        const EtaResult eta = eta_F(cavity, spec);
        run.line("force_n", eta.force);
        run.line("force_error_n", eta.error * eta.force_ideal);
        run.line("force_ideal_n", eta.force_ideal);
        run.line("eta_f", eta.value);
        if (geo.plane_sphere) {
            const PsResult ps = force_ps(cavity, {geo.radius, L}, spec);
            run.warnings(ps.warnings);
            run.line("sphere_radius_m", geo.radius);
            run.line("force_ps_n", ps.value);
            run.line("force_ps_error_n", ps.error);
        }
    }
    run.flush();
}

void run_eta_scan(Run& run) {
    run.load("eta-scan");
    const QuadratureSpec spec = run.quadrature();
    auto& cfg = run.cfg;

    double omega_p;
    if (const auto v = cfg.maybe_frequency("scan.omega_p")) {
        omega_p = *v;
    } else {
        omega_p = 9.0 * constants::ev_to_rad_s;
        cfg.note("scan.omega_p_ev", 9.0);
    }
    const double gamma_ratio = cfg.get_double("scan.gamma_over_omega_p", 4e-3);
    const double start = cfg.get_double("scan.start", 1e-3);
    const double stop = cfg.get_double("scan.stop", 1e3);
    const int count = cfg.get_int("scan.count", 25);
    if (!(omega_p > 0.0))
        throw cfg.error_at("scan.omega_p_ev", "omega_p must be positive");
    if (!(gamma_ratio >= 0.0))
        throw cfg.error_at("scan.gamma_over_omega_p", "ratio must be >= 0");
    if (!(start > 0.0) || !(stop > start))
        throw cfg.error_at("scan.start", "need 0 < start < stop");
    if (count < 2)
        throw cfg.error_at("scan.count", "need count >= 2");

    const double lambda_p = 2.0 * constants::pi * constants::c / omega_p;
    const Mirror plasma = Bulk{Plasma{omega_p}};
    const Mirror drude = Bulk{Drude{omega_p, gamma_ratio * omega_p}};

    run.body << "l_over_lambda_p,eta_f_plasma,eta_f_drude,eta_short_asymptote\n";
    for (double r : sweep_points({start, stop, count, true})) {
        const double L = r * lambda_p;
        const EtaResult ep = eta_F({plasma, plasma, L, 1.0, 0.0}, spec);
        const EtaResult ed = eta_F({drude, drude, L, 1.0, 0.0}, spec);
        run.row({r, ep.value, ed.value, 1.193 * r});
    }
    run.flush();
}

void run_thermal(Run& run) {
    run.load("thermal");
    const QuadratureSpec spec = run.quadrature();
    SceneConfig scene = config_scene(run.cfg, true);
    if (!scene.spacing)
        throw run.cfg.error_at("scene.spacing_m", "thermal comparison needs a single spacing");
    if (!(scene.temperature > 0.0))
        throw run.cfg.error_at("scene.temperature_k",
                               "temperature is zero; use the force command for T = 0");
    const SeriesSpec series = config_series(run.cfg);
    const CavityConfig cavity = scene.cavity_at(*scene.spacing);

    const MatsubaraForce half = matsubara_force(
        cavity, {scene.temperature, M0Prescription::half_weight_limit}, spec);
    const MatsubaraForce zero = matsubara_force(
        cavity, {scene.temperature, M0Prescription::drude_te_zero}, spec);

    // The winding series is marginal for dissipative mirrors (its terms decay
    // barely faster than 1/n); report the partial sum instead of failing.
    SeriesForce sf;
    try {
        sf = series_force(cavity, {scene.temperature, M0Prescription::half_weight_limit},
                          series, spec);
    } catch (const ConvergenceError& e) {
        if (!half.prescription_sensitive) throw;
        sf.value = e.partial();
        sf.error = e.error_estimate();
        sf.terms_used = series.n_max;
        sf.converged = false;
    }

    run.line("spacing_m", cavity.spacing);
    run.line("temperature_k", scene.temperature);
    emit_matsubara(run, "matsubara_half_weight", "n", half);
    emit_matsubara(run, "matsubara_drude_te_zero", "n", zero);
    run.line("series_n", sf.value);
    run.line("series_error_n", sf.error);
    run.line("series_terms", sf.terms_used);
    if (sf.converged) run.line("series_tail_n", sf.tail_estimate);
    run.line("series_converged", std::string(sf.converged ? "true" : "false"));
    if (!sf.converged)
        run.comment("winding series left unsettled by a dissipative mirror; series_n is the "
                    "partial sum through n_max");
    run.line("difference_n", sf.value - half.value);
    run.line("difference_rel", (sf.value - half.value) / half.value);
    run.line("prescription_sensitive",
             std::string(half.prescription_sensitive ? "true" : "false"));
    run.flush();
}

void run_roughness(Run& run) {
    run.load("roughness");
    const QuadratureSpec spec = run.quadrature();
    SceneConfig scene = config_scene(run.cfg, true);
    if (!scene.spacing)
        throw run.cfg.error_at("scene.spacing_m", "roughness needs a single spacing");
    if (scene.temperature > 0.0)
        throw run.cfg.error_at("scene.temperature_k",
                               "the roughness correction is evaluated at T = 0");
    const RoughnessSpectrum rough = config_roughness(run.cfg);
    const CavityConfig cavity = scene.cavity_at(*scene.spacing);

    const RoughnessResult res = roughness_energy_pfa(cavity, rough, spec);
    run.warnings(res.warnings);
    run.line("spacing_m", cavity.spacing);
    run.line("variance_m2", rough.variance());
    if (rough.has_spectrum())
        run.line("spectrum_support_k_rad_m", rough.support_k());
    run.line("delta_energy_j", res.delta_E);
    run.line("delta_energy_error_j", res.error);
    run.line("energy_ratio", res.ratio);

    if (run.cfg.has("roughness.sensitivity_k_rad_m")) {
        const double k = run.cfg.get_double("roughness.sensitivity_k_rad_m");
        const double lambda_p = cavity_plasma_wavelength(cavity).value_or(0.0);
        try {
            run.line("sensitivity_ratio",
                     roughness_sensitivity_ratio(k, cavity.spacing, lambda_p));
        } catch (const OutOfRegimeError& e) {
            run.comment(std::string("sensitivity: ") + e.what());
        }
    }
    run.flush();
}

void run_lateral(Run& run) {
    run.load("lateral");
    const QuadratureSpec spec = run.quadrature();
    SceneConfig scene = config_scene(run.cfg, true);
    if (!scene.spacing)
        throw run.cfg.error_at("scene.spacing_m", "lateral needs a single spacing");
    if (scene.temperature > 0.0)
        throw run.cfg.error_at("scene.temperature_k",
                               "the lateral correction is evaluated at T = 0");
    const CorrugationSpec corr = config_corrugation(run.cfg);
    const GeometryConfig geo = config_geometry(run.cfg);
    const auto b_sweep = config_length_sweep(run.cfg, "corrugation.sweep");
    const CavityConfig cavity = scene.cavity_at(*scene.spacing);

    // Amplitudes of the sinusoids; per-b values are exact rescalings.
    CorrugationSpec at_zero = corr;
    at_zero.b = 0.0;
    const CorrugationResult energy_amp = lateral_energy_pfa(cavity, at_zero, spec);
    PsResult force_amp;
    if (geo.plane_sphere) {
        CorrugationSpec at_quarter = corr;
        at_quarter.b = 0.5 * constants::pi / corr.k;
        force_amp = lateral_force_ps_pfa(at_quarter, {geo.radius, *scene.spacing}, cavity, spec);
    }

    if (b_sweep) {
        run.body << (geo.plane_sphere ? "b_m,lateral_energy_j,lateral_force_n"
                                      : "b_m,lateral_energy_j")
                 << "\n";
        for (double b : sweep_points(*b_sweep)) {
            std::vector<double> cols{b, energy_amp.delta_E * std::cos(corr.k * b)};
            if (geo.plane_sphere)
                cols.push_back(force_amp.value * std::sin(corr.k * b));
            run.row(cols);
        }
        run.flush();
        return;
    }

    run.warnings(energy_amp.warnings);
    run.line("spacing_m", cavity.spacing);
    run.line("corrugation_k_rad_m", corr.k);
    run.line("b_m", corr.b);
    run.line("lateral_energy_j", energy_amp.delta_E * std::cos(corr.k * corr.b));
    run.line("lateral_energy_error_j", energy_amp.error);
    run.line("lateral_energy_amplitude_j", std::fabs(energy_amp.delta_E));
    if (geo.plane_sphere) {
        run.warnings(force_amp.warnings);
        run.line("sphere_radius_m", geo.radius);
        run.line("lateral_force_n", force_amp.value * std::sin(corr.k * corr.b));
        run.line("lateral_force_amplitude_n", force_amp.value);
        run.line("lateral_force_error_n", force_amp.error);
    }
    run.flush();
}

void run_material_show(Run& run) {
    run.load("material-show");
    auto& cfg = run.cfg;
    const DielectricModel model = config_model(cfg, "mirror1");
    const double start_ev = cfg.get_double("show.start_ev", 0.01);
    const double stop_ev = cfg.get_double("show.stop_ev", 100.0);
    const int count = cfg.get_int("show.count", 121);
    if (!(start_ev > 0.0) || !(stop_ev > start_ev))
        throw cfg.error_at("show.start_ev", "need 0 < start_ev < stop_ev");
    if (count < 2)
        throw cfg.error_at("show.count", "need count >= 2");

    const StaticResponse stat = static_response(model);
    run.comment("static_divergence_power = " + std::to_string(stat.divergence_power));
    run.comment("static_coeff = " + fmt(stat.coeff));
    if (const auto lp = plasma_wavelength(model))
        run.comment("plasma_wavelength_m = " + fmt(*lp));
    if (const auto* tab = std::get_if<Tabulated>(&model); tab && tab->table->narrow_span())
        run.comment("warning: optical table spans fewer than two decades; "
                    "the dispersion integral is extrapolation-dominated");

    run.body << "xi_ev,xi_rad_s,eps_iw\n";
    for (double ev : sweep_points({start_ev, stop_ev, count, true})) {
        const double xi = ev * constants::ev_to_rad_s;
        run.row({ev, xi, epsilon_iw(model, xi)});
    }
    run.flush();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir force calculator for real mirrors (scattering formulation)"};
    app.require_subcommand(1);
    app.fallthrough();

    Run run;
    app.add_option("--config", run.config_path, "run configuration file")->required();
    app.add_option("--out", run.out_path, "output file (default: stdout)");
    app.add_option("--rel-tol", run.rel_tol, "override quadrature.rel_tol");
    app.add_option("--threads", run.threads, "worker threads (0 = auto, 1 = serial)");

    auto* cmd_force = app.add_subcommand("force", "normal Casimir force");
    auto* cmd_energy = app.add_subcommand("energy", "Casimir energy / free energy");
    auto* cmd_eta = app.add_subcommand("eta-scan", "reduction factor vs L/lambda_P");
    auto* cmd_thermal = app.add_subcommand("thermal", "Matsubara vs winding-series comparison");
    auto* cmd_rough = app.add_subcommand("roughness", "perturbative roughness correction");
    auto* cmd_lateral = app.add_subcommand("lateral", "corrugation energy and lateral force");
    auto* cmd_material = app.add_subcommand("material-show", "tabulate eps(i xi) for mirror1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cmd_force) run_force(run, false);
        if (*cmd_energy) run_force(run, true);
        if (*cmd_eta) run_eta_scan(run);
        if (*cmd_thermal) run_thermal(run);
        if (*cmd_rough) run_roughness(run);
        if (*cmd_lateral) run_lateral(run);
        if (*cmd_material) run_material_show(run);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what()
                  << " (partial = " << fmt(e.partial())
                  << ", error = " << fmt(e.error_estimate()) << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
