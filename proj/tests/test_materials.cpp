#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"

using namespace casimir;

namespace {

constexpr double ev = constants::ev_to_rad_s;

// Im eps of a Drude metal at real frequency, for synthesizing tables.
double drude_eps_im(double omega, double wp, double gamma) {
    return wp * wp * gamma / (omega * (omega * omega + gamma * gamma));
}

std::shared_ptr<const OpticalDataTable> drude_table(double wp, double gamma,
                                                    double w_lo, double w_hi,
                                                    int per_decade) {
    auto table = std::make_shared<OpticalDataTable>();
    const double decades = std::log10(w_hi / w_lo);
    const int n = static_cast<int>(decades * per_decade) + 1;
    for (int i = 0; i <= n; ++i) {
        const double w = w_lo * std::pow(w_hi / w_lo, static_cast<double>(i) / n);
        table->rows.push_back({w, drude_eps_im(w, wp, gamma)});
    }
    return table;
}

} // namespace

TEST_CASE("plasma dielectric function on the imaginary axis") {
    const double wp = 9.0 * ev;
    CHECK(epsilon_iw(Plasma{wp}, wp) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(epsilon_iw(Plasma{wp}, 0.1 * wp) == doctest::Approx(101.0).epsilon(1e-14));
    CHECK_THROWS_AS(epsilon_iw(Plasma{wp}, 0.0), std::domain_error);
    CHECK_THROWS_AS(epsilon_iw(Plasma{wp}, -1.0), std::domain_error);
}

TEST_CASE("drude dielectric function and its plasma limit") {
    const double wp = 9.0 * ev;
    const double gamma = 0.035 * ev;
    // eps(i wp) = 1 + 1/(1 + gamma/wp), directly from the closed form.
    CHECK(epsilon_iw(Drude{wp, gamma}, wp) ==
          doctest::Approx(1.0 + 1.0 / (1.0 + gamma / wp)).epsilon(1e-15));
    // gamma = 0 degenerates to the plasma model exactly.
    for (double xi : {0.01 * wp, wp, 50.0 * wp})
        CHECK(epsilon_iw(Drude{wp, 0.0}, xi) == epsilon_iw(Plasma{wp}, xi));
    // and continuously: a vanishing rate is indistinguishable in practice.
    for (double xi : {1e-3 * wp, wp, 1e2 * wp})
        CHECK(epsilon_iw(Drude{wp, 1e-12 * wp}, xi) ==
              doctest::Approx(epsilon_iw(Plasma{wp}, xi)).epsilon(1e-9));
}

TEST_CASE("stronger metal means larger low-frequency response") {
    const double xi = 0.01 * ev;
    const double strong = epsilon_iw(Drude{8.97 * ev, 0.0295 * ev}, xi);
    const double weak = epsilon_iw(Drude{7.5 * ev, 0.130 * ev}, xi);
    CHECK(strong > weak);
}

TEST_CASE("eps is real, at least 1, and non-increasing in xi") {
    const double wp = 9.0 * ev;
    std::vector<DielectricModel> models = {Plasma{wp}, Drude{wp, 0.004 * wp}};
    models.push_back(Tabulated{drude_table(wp, 0.004 * wp, 1e-4 * wp, 1e3 * wp, 40),
                               Drude{wp, 0.004 * wp}});
    for (const auto& model : models) {
        double prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 40; ++i) {
            const double xi = 1e-3 * wp * std::pow(1e5, i / 40.0);
            const double eps = epsilon_iw(model, xi);
            CHECK(eps >= 1.0);
            CHECK(eps <= prev * (1.0 + 1e-12));
            prev = eps;
        }
    }
}

TEST_CASE("dispersion integral recovers the drude closed form within 1%") {
    const double wp = 9.0 * ev;
    const double gamma = 0.035 * ev;
    const Tabulated model{drude_table(wp, gamma, 1e-4 * wp, 1e3 * wp, 60),
                          Drude{wp, gamma}};
    double worst = 0.0;
    for (int i = 0; i <= 25; ++i) {
        const double xi = 1e-3 * wp * std::pow(1e5, i / 25.0);
        const double exact = epsilon_iw(Drude{wp, gamma}, xi);
        const double got = epsilon_iw(model, xi);
        worst = std::max(worst, std::fabs(got - exact) / exact);
    }
    CHECK(worst < 0.01);
}

TEST_CASE("dispersion integral of nothing is vacuum") {
    OpticalDataTable table;
    table.rows = {{1e10, 0.0}, {1e14, 0.0}, {1e18, 0.0}};
    const DispersionResult res = kramers_kronig_iw(table, std::nullopt, 1e15);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(res.narrow_span_warning);
}

TEST_CASE("narrow tables are flagged as extrapolation-dominated") {
    OpticalDataTable narrow;
    narrow.rows = {{1e15, 1.0}, {2e15, 0.5}, {5e15, 0.2}};
    CHECK(narrow.narrow_span());
    CHECK(kramers_kronig_iw(narrow, std::nullopt, 1e15).narrow_span_warning);
    OpticalDataTable wide;
    wide.rows = {{1e13, 1.0}, {1e14, 0.5}, {1e16, 0.2}};
    CHECK_FALSE(wide.narrow_span());
}

TEST_CASE("optical tables load from csv with unit conversion") {
    std::istringstream in("# frequency, Im eps\n1.0, 5.0\n\n2.0, 3.0\n");
    const OpticalDataTable table = load_optical_table(in, FrequencyUnit::ev);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].omega == doctest::Approx(1.519e15).epsilon(1e-12));
    CHECK(table.rows[1].omega == doctest::Approx(3.038e15).epsilon(1e-12));
    CHECK(table.rows[0].eps_im == 5.0);
    CHECK(table.rows[1].eps_im == 3.0);
    // rad/s passes through untouched.
    std::istringstream raw("1e14 2.0\n1e15 1.0\n");
    const OpticalDataTable direct = load_optical_table(raw, FrequencyUnit::rad_s);
    CHECK(direct.rows[0].omega == 1e14);
}

TEST_CASE("optical table loader rejects malformed input") {
    auto load = [](const std::string& text) {
        std::istringstream in(text);
        return load_optical_table(in, FrequencyUnit::ev, "table.csv");
    };
    CHECK_THROWS_AS(load(""), ConfigError);
    CHECK_THROWS_AS(load("2.0, 1.0\n1.0, 5.0\n"), ConfigError);   // descending
    CHECK_THROWS_AS(load("1.0, 1.0\n1.0, 2.0\n"), ConfigError);   // duplicate
    CHECK_THROWS_AS(load("1.0, -2.0\n"), ConfigError);            // negative Im eps
    CHECK_THROWS_AS(load("1.0\n"), ConfigError);                  // one column
    CHECK_THROWS_AS(load("1.0, abc\n"), ConfigError);             // not a number
    // the reported line number names the offender
    try {
        load("1.0, 1.0\nbroken\n");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("table.csv:2") != std::string::npos);
    }
}

TEST_CASE("static response distinguishes the model families") {
    const double wp = 9.0 * ev;
    const double gamma = 0.004 * wp;

    const StaticResponse plasma = static_response(Plasma{wp});
    CHECK(plasma.divergence_power == 2);
    CHECK(plasma.coeff == doctest::Approx(wp * wp).epsilon(1e-15));
    CHECK(plasma.xi2_eps_m1 == doctest::Approx(wp * wp).epsilon(1e-15));

    const StaticResponse drude = static_response(Drude{wp, gamma});
    CHECK(drude.divergence_power == 1);
    CHECK(drude.coeff == doctest::Approx(wp * wp / gamma).epsilon(1e-15));
    CHECK(drude.xi2_eps_m1 == 0.0);

    CHECK(static_response(Drude{wp, 0.0}).divergence_power == 2);

    const Tabulated dissipative{drude_table(wp, gamma, 1e-4 * wp, 1e3 * wp, 40),
                                Drude{wp, gamma}};
    CHECK(static_response(dissipative).divergence_power == 1);

    // No extrapolation: the dispersion integral itself is finite at xi -> 0.
    OpticalDataTable finite_table;
    finite_table.rows = {{1e13, 0.5}, {1e14, 0.3}, {1e16, 0.1}};
    const Tabulated finite{std::make_shared<OpticalDataTable>(finite_table), std::nullopt};
    const StaticResponse stat = static_response(finite);
    CHECK(stat.divergence_power == 0);
    CHECK(stat.coeff > 1.0);
    CHECK(stat.xi2_eps_m1 == 0.0);
}

TEST_CASE("plasma wavelength follows the plasma scale") {
    const double wp = 9.0 * ev;
    const double expected = 2.0 * constants::pi * constants::c / wp;
    CHECK(plasma_wavelength(Plasma{wp}).value() == doctest::Approx(expected).epsilon(1e-15));
    CHECK(plasma_wavelength(Drude{wp, 0.1 * wp}).value() ==
          doctest::Approx(expected).epsilon(1e-15));
    const Tabulated with_tail{drude_table(wp, 0.004 * wp, 1e-4 * wp, 1e3 * wp, 40),
                              Drude{wp, 0.004 * wp}};
    CHECK(plasma_wavelength(with_tail).value() == doctest::Approx(expected).epsilon(1e-15));
    OpticalDataTable bare;
    bare.rows = {{1e13, 0.5}, {1e16, 0.1}};
    CHECK_FALSE(plasma_wavelength(Tabulated{std::make_shared<OpticalDataTable>(bare),
                                            std::nullopt})
                    .has_value());
}

TEST_CASE("electron-volt conversion round-trips") {
    for (double x : {0.01, 1.0, 8.97, 100.0})
        CHECK((x * ev) / ev == doctest::Approx(x).epsilon(1e-12));
}
