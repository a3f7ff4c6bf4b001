#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "test_support.hpp"

using namespace casimir;
using testsup::lambda_p;
using testsup::omega_p;

namespace {

// (xi, k) grid spanning the cavity-relevant corner of mode space.
std::vector<Mode> mode_grid(Polarization pol, int n_xi = 10, int n_k = 5) {
    std::vector<Mode> modes;
    const double wp = omega_p();
    for (int i = 0; i < n_xi; ++i) {
        const double xi = 0.01 * wp * std::pow(1e3, static_cast<double>(i) / (n_xi - 1));
        for (int j = 0; j < n_k; ++j) {
            const double k = j == 0 ? 0.0 : std::pow(10.0, 5 + j) / lambda_p * 1e-7;
            modes.push_back(mode_from_xi_k(xi, k, pol));
        }
    }
    return modes;
}

} // namespace

TEST_CASE("modes keep xi, k, kappa consistent") {
    const double xi = 1e15, k = 3e6;
    const Mode m = mode_from_xi_k(xi, k, Polarization::te);
    CHECK(m.kappa == doctest::Approx(std::sqrt(k * k + xi * xi / (constants::c * constants::c)))
                         .epsilon(1e-15));
    const Mode m2 = mode_from_xi_kappa(xi, m.kappa, Polarization::tm);
    CHECK(m2.k == doctest::Approx(k).epsilon(1e-7));
    // xi = 0 is the static limit used by the zeroth thermal term, so it is legal
    const Mode st = mode_from_xi_k(0.0, 1.0, Polarization::te);
    CHECK(st.kappa == 1.0);
    CHECK_THROWS_AS(mode_from_xi_k(-1.0, 1.0, Polarization::te), std::domain_error);
    CHECK_THROWS_AS(mode_from_xi_k(1.0, -1.0, Polarization::te), std::domain_error);
    // kappa below the light line xi/c is unreachable
    CHECK_THROWS_AS(mode_from_xi_kappa(1e15, 1e5, Polarization::te), std::domain_error);
}

TEST_CASE("vacuum does not reflect") {
    for (auto pol : {Polarization::te, Polarization::tm}) {
        const Mode m = mode_from_xi_k(1e15, 2e6, pol);
        CHECK(fresnel_bulk(Plasma{0.0}, m) == 0.0);
    }
}

TEST_CASE("overwhelming permittivity reflects like a perfect mirror") {
    const double wp = omega_p();
    const Mode te = mode_from_xi_k(0.01 * wp, 1e6, Polarization::te);
    const Mode tm = mode_from_xi_k(0.01 * wp, 1e6, Polarization::tm);
    // eps ~ 1e8 at xi = 1e-4 wp for a plasma metal
    CHECK(fresnel_bulk(Plasma{100.0 * wp}, te) == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(fresnel_bulk(Plasma{100.0 * wp}, tm) == doctest::Approx(+1.0).epsilon(1e-3));
}

TEST_CASE("normal-incidence amplitudes at the plasma frequency") {
    // eps(i wp) = 2 and c kappa = xi at k = 0: both amplitudes reduce to
    // (sqrt(2)-1)/(sqrt(2)+1) = 3 - 2 sqrt(2) up to polarization sign.
    const double wp = omega_p();
    const double frozen = 3.0 - 2.0 * std::sqrt(2.0);
    const Mode te = mode_from_xi_k(wp, 0.0, Polarization::te);
    const Mode tm = mode_from_xi_k(wp, 0.0, Polarization::tm);
    CHECK(fresnel_bulk(Plasma{wp}, te) == doctest::Approx(-frozen).epsilon(1e-12));
    CHECK(fresnel_bulk(Plasma{wp}, tm) == doctest::Approx(+frozen).epsilon(1e-12));
}

TEST_CASE("normal incidence degeneracy for any model") {
    const double wp = omega_p();
    for (double xi : {0.03 * wp, wp, 30.0 * wp}) {
        const Mode te = mode_from_xi_k(xi, 0.0, Polarization::te);
        const Mode tm = mode_from_xi_k(xi, 0.0, Polarization::tm);
        CHECK(std::fabs(fresnel_bulk(Drude{wp, 0.01 * wp}, te)) ==
              doctest::Approx(std::fabs(fresnel_bulk(Drude{wp, 0.01 * wp}, tm)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("high frequencies pass through any real mirror") {
    const double wp = omega_p();
    for (auto pol : {Polarization::te, Polarization::tm}) {
        const Mode m = mode_from_xi_k(1e3 * wp, 1e6, pol);
        CHECK(std::fabs(fresnel_bulk(Plasma{wp}, m)) < 1e-5);
        CHECK(std::fabs(mirror_reflection(SlabMirror{Plasma{wp}, lambda_p}, m)) < 1e-5);
    }
}

TEST_CASE("passivity bounds every amplitude") {
    const double wp = omega_p();
    std::vector<Mirror> mirrors = {
        Perfect{},
        Bulk{Plasma{wp}},
        Bulk{Drude{wp, 0.004 * wp}},
        SlabMirror{Plasma{wp}, 0.3 * lambda_p},
        Stack{{Layer{Drude{wp, 0.01 * wp}, 20e-9}, Layer{Plasma{0.5 * wp}, 50e-9}},
              Plasma{0.8 * wp}},
    };
    for (auto pol : {Polarization::te, Polarization::tm})
        for (const auto& mirror : mirrors)
            for (const Mode& m : mode_grid(pol))
                CHECK(std::fabs(mirror_reflection(mirror, m)) <= 1.0 + 1e-12);
}

TEST_CASE("thin slabs stop reflecting, thick slabs turn bulk") {
    const double wp = omega_p();
    for (auto pol : {Polarization::te, Polarization::tm}) {
        for (const Mode& m : mode_grid(pol)) {
            // Transparency is not uniform over modes: near-grazing TM amplitudes
            // fade on the scale 1 - r^2, so bound loosely and check the linear
            // scaling in thickness instead.
            const double thin = slab_reflection(Plasma{wp}, 1e-9 * lambda_p, m);
            const double thinner = slab_reflection(Plasma{wp}, 1e-10 * lambda_p, m);
            CHECK(std::fabs(thin) < 1e-3);
            CHECK(std::fabs(thinner) < 0.11 * std::fabs(thin) + 1e-15);
            const double bulk = fresnel_bulk(Plasma{wp}, m);
            const double slab = slab_reflection(Plasma{wp}, 5.0 * lambda_p, m);
            CHECK(std::fabs(slab - bulk) <= 1e-3);
        }
    }
}

TEST_CASE("slab equals interface-propagation-interface composition") {
    const double wp = omega_p();
    const double d = lambda_p;
    for (auto pol : {Polarization::te, Polarization::tm}) {
        for (const Mode& m : mode_grid(pol)) {
            const double eps = epsilon_iw(Plasma{wp}, m.xi);
            const double kappa_m =
                std::sqrt(m.kappa * m.kappa + (eps - 1.0) * m.xi * m.xi /
                                                  (constants::c * constants::c));
            const ScatterPair front = interface_pair(std::nullopt, Plasma{wp}, m);
            const ScatterPair back = interface_pair(Plasma{wp}, std::nullopt, m);
            const ScatterPair composed = stack_compose(front, back, std::exp(-kappa_m * d));
            const double direct = slab_reflection(Plasma{wp}, d, m);
            CHECK(composed.r == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("composing with a transparent network is the identity") {
    const ScatterPair a{0.3, -0.3, std::sqrt(1.0 - 0.09)};
    const ScatterPair none{0.0, 0.0, 1.0};
    const ScatterPair left = stack_compose(none, a, 1.0);
    CHECK(left.r == a.r);
    CHECK(left.t == a.t);
    const ScatterPair right = stack_compose(a, none, 1.0);
    CHECK(right.r == a.r);
    CHECK(right.t == a.t);
}

TEST_CASE("composition refuses a singular cavity") {
    const ScatterPair unit{1.0, 1.0, 0.0};
    CHECK_THROWS_AS(stack_compose(unit, unit, 1.0), std::domain_error);
}

TEST_CASE("a homogeneous stack collapses to its bulk") {
    const double wp = omega_p();
    const Mirror stack = Stack{{Layer{Plasma{wp}, 60e-9}}, Plasma{wp}};
    const Mirror bulk = Bulk{Plasma{wp}};
    for (auto pol : {Polarization::te, Polarization::tm})
        for (const Mode& m : mode_grid(pol))
            CHECK(mirror_reflection(stack, m) ==
                  doctest::Approx(mirror_reflection(bulk, m)).epsilon(1e-12));
}

TEST_CASE("an empty stack is transparent") {
    const Mode m = mode_from_xi_k(1e15, 1e6, Polarization::te);
    CHECK(mirror_reflection(Stack{{}, std::nullopt}, m) == 0.0);
}

TEST_CASE("a stack with only a substrate is its bulk") {
    const double wp = omega_p();
    const Mode m = mode_from_xi_k(0.3 * wp, 4e6, Polarization::tm);
    CHECK(mirror_reflection(Stack{{}, Plasma{wp}}, m) ==
          doctest::Approx(fresnel_bulk(Plasma{wp}, m)).epsilon(1e-14));
}

TEST_CASE("perfect mirrors reflect everything") {
    for (const Mode& m : mode_grid(Polarization::te))
        CHECK(mirror_reflection(Perfect{}, m) == -1.0);
    for (const Mode& m : mode_grid(Polarization::tm))
        CHECK(mirror_reflection(Perfect{}, m) == 1.0);
}

TEST_CASE("frozen-frequency amplitudes match the mode-by-mode path") {
    const double wp = omega_p();
    const Mirror mirror = Stack{{Layer{Drude{wp, 0.004 * wp}, 40e-9}}, Plasma{0.7 * wp}};
    const double xi = 0.2 * wp;
    const MirrorAmplitudes amps(mirror, xi);
    for (auto pol : {Polarization::te, Polarization::tm}) {
        for (double k : {0.0, 1e6, 1e7, 1e8}) {
            const Mode m = mode_from_xi_k(xi, k, pol);
            CHECK(amps.r(pol, m.kappa) ==
                  doctest::Approx(mirror_reflection(mirror, m)).epsilon(1e-14));
        }
    }
    CHECK_THROWS_AS(MirrorAmplitudes(mirror, 0.0), std::domain_error);
}

TEST_CASE("static limits: plasma keeps TE reflectivity, dissipation loses it") {
    const double wp = omega_p();
    const double kappa = 5e6;

    const MirrorAmplitudes plasma = MirrorAmplitudes::static_limit(Bulk{Plasma{wp}});
    // TE sees kappa_m = sqrt(kappa^2 + wp^2/c^2) even at xi = 0.
    const double km = std::sqrt(kappa * kappa + wp * wp / (constants::c * constants::c));
    CHECK(plasma.r(Polarization::te, kappa) ==
          doctest::Approx((kappa - km) / (kappa + km)).epsilon(1e-14));
    CHECK(plasma.r(Polarization::tm, kappa) == doctest::Approx(1.0).epsilon(1e-14));

    const MirrorAmplitudes drude = MirrorAmplitudes::static_limit(Bulk{Drude{wp, 0.01 * wp}});
    CHECK(drude.r(Polarization::te, kappa) == 0.0);
    CHECK(drude.r(Polarization::tm, kappa) == doctest::Approx(1.0).epsilon(1e-14));

    // The smooth xi -> 0 limit agrees with the static construction.
    const MirrorAmplitudes near_zero(Bulk{Plasma{wp}}, 1e-8 * wp);
    CHECK(near_zero.r(Polarization::te, kappa) ==
          doctest::Approx(plasma.r(Polarization::te, kappa)).epsilon(1e-8));
}
