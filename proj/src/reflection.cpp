#include "casimir/reflection.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/constants.hpp"

namespace casimir {

namespace {

using constants::c;

// Decay constant inside a medium, sqrt(k^2 + eps xi^2/c^2), written in
// terms of the vacuum kappa so k never has to be reconstructed.
double medium_kappa(double eps, double xi, double kappa) {
    return std::sqrt(kappa * kappa + (eps - 1.0) * xi * xi / (c * c));
}

// Interface amplitude from medium a into medium b at xi > 0.
double interface_r(double eps_a, double eps_b, double xi, double kappa, Polarization pol) {
    const double ka = medium_kappa(eps_a, xi, kappa);
    const double kb = medium_kappa(eps_b, xi, kappa);
    if (pol == Polarization::te)
        return (ka - kb) / (ka + kb);
    return (eps_b * ka - eps_a * kb) / (eps_b * ka + eps_a * kb);
}

// Static (xi = 0) versions.  kappa equals k there, and the medium decay
// constant becomes sqrt(k^2 + lim xi^2 eps / c^2).
double medium_kappa_static(const StaticResponse& s, double kappa) {
    return std::sqrt(kappa * kappa + s.xi2_eps_m1 / (c * c));
}

double interface_r_static(const StaticResponse& a, const StaticResponse& b,
                          double kappa, Polarization pol) {
    const double ka = medium_kappa_static(a, kappa);
    const double kb = medium_kappa_static(b, kappa);
    if (pol == Polarization::te)
        return (ka - kb) / (ka + kb);
    // TM compares eps_b kappa_a with eps_a kappa_b as xi -> 0; with
    // eps ~ coeff/xi^p only the divergence orders and coefficients matter.
    if (a.divergence_power != b.divergence_power)
        return b.divergence_power > a.divergence_power ? 1.0 : -1.0;
    return (b.coeff * ka - a.coeff * kb) / (b.coeff * ka + a.coeff * kb);
}

const StaticResponse vacuum_static{0, 1.0, 0.0};

} // namespace

Mode mode_from_xi_k(double xi, double k, Polarization pol) {
    if (xi < 0.0 || k < 0.0)
        throw std::domain_error("mode: xi and k must be non-negative");
    return {xi, k, std::sqrt(k * k + xi * xi / (c * c)), pol};
}

Mode mode_from_xi_kappa(double xi, double kappa, Polarization pol) {
    if (xi < 0.0 || kappa * c < xi)
        throw std::domain_error("mode: need kappa >= xi/c >= 0");
    const double k2 = kappa * kappa - xi * xi / (c * c);
    return {xi, k2 > 0.0 ? std::sqrt(k2) : 0.0, kappa, pol};
}

double fresnel_bulk(const DielectricModel& model, const Mode& mode) {
    if (mode.xi == 0.0)
        return interface_r_static(vacuum_static, static_response(model), mode.kappa, mode.pol);
    return interface_r(1.0, epsilon_iw(model, mode.xi), mode.xi, mode.kappa, mode.pol);
}

double slab_reflection(const DielectricModel& model, double thickness, const Mode& mode) {
    if (!(thickness > 0.0))
        throw std::domain_error("slab_reflection: thickness must be positive");
    double r_si, km;
    if (mode.xi == 0.0) {
        const StaticResponse s = static_response(model);
        r_si = interface_r_static(vacuum_static, s, mode.kappa, mode.pol);
        km = medium_kappa_static(s, mode.kappa);
    } else {
        const double eps = epsilon_iw(model, mode.xi);
        r_si = interface_r(1.0, eps, mode.xi, mode.kappa, mode.pol);
        km = medium_kappa(eps, mode.xi, mode.kappa);
    }
    // Fabry-Perot: r = r_si (1 - e^{-2 delta}) / (1 - r_si^2 e^{-2 delta})
    const double e2 = std::exp(-2.0 * km * thickness);
    return r_si * (1.0 - e2) / (1.0 - r_si * r_si * e2);
}

ScatterPair stack_compose(const ScatterPair& a, const ScatterPair& b, double propagation) {
    const ScatterPair bp{b.r * propagation * propagation, b.r_back, b.t * propagation};
    const double denom = 1.0 - a.r_back * bp.r;
    if (std::fabs(denom) < 1e-300)
        throw std::domain_error("stack_compose: singular cavity (r_a r_b = 1)");
    return {a.r + a.t * a.t * bp.r / denom,
            bp.r_back + bp.t * bp.t * a.r_back / denom,
            a.t * bp.t / denom};
}

ScatterPair interface_pair(const std::optional<DielectricModel>& front,
                           const std::optional<DielectricModel>& back,
                           const Mode& mode) {
    double r;
    if (mode.xi == 0.0) {
        const StaticResponse sa = front ? static_response(*front) : vacuum_static;
        const StaticResponse sb = back ? static_response(*back) : vacuum_static;
        r = interface_r_static(sa, sb, mode.kappa, mode.pol);
    } else {
        const double ea = front ? epsilon_iw(*front, mode.xi) : 1.0;
        const double eb = back ? epsilon_iw(*back, mode.xi) : 1.0;
        r = interface_r(ea, eb, mode.xi, mode.kappa, mode.pol);
    }
    return {r, -r, std::sqrt(std::max(0.0, 1.0 - r * r))};
}

MirrorAmplitudes::MirrorAmplitudes(const Mirror& mirror, double xi) {
    if (!(xi > 0.0))
        throw std::domain_error("MirrorAmplitudes: xi must be positive; "
                                "use static_limit for xi = 0");
    xi_ = xi;
    std::visit(
        [this, xi](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Perfect>) {
                perfect_ = true;
            } else if constexpr (std::is_same_v<T, Bulk>) {
                media_.push_back({epsilon_iw(m.model, xi), {}, 0.0});
                vacuum_backed_ = false;
            } else if constexpr (std::is_same_v<T, SlabMirror>) {
                media_.push_back({epsilon_iw(m.model, xi), {}, m.thickness});
                vacuum_backed_ = true;
            } else {
                for (const Layer& l : m.layers)
                    media_.push_back({epsilon_iw(l.model, xi), {}, l.thickness});
                if (m.substrate) {
                    media_.push_back({epsilon_iw(*m.substrate, xi), {}, 0.0});
                    vacuum_backed_ = false;
                }
            }
        },
        mirror);
}

MirrorAmplitudes MirrorAmplitudes::static_limit(const Mirror& mirror) {
    MirrorAmplitudes out;
    out.static_ = true;
    std::visit(
        [&out](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Perfect>) {
                out.perfect_ = true;
            } else if constexpr (std::is_same_v<T, Bulk>) {
                out.media_.push_back({1.0, static_response(m.model), 0.0});
                out.vacuum_backed_ = false;
            } else if constexpr (std::is_same_v<T, SlabMirror>) {
                out.media_.push_back({1.0, static_response(m.model), m.thickness});
                out.vacuum_backed_ = true;
            } else {
                for (const Layer& l : m.layers)
                    out.media_.push_back({1.0, static_response(l.model), l.thickness});
                if (m.substrate) {
                    out.media_.push_back({1.0, static_response(*m.substrate), 0.0});
                    out.vacuum_backed_ = false;
                }
            }
        },
        mirror);
    return out;
}

double MirrorAmplitudes::r(Polarization pol, double kappa) const {
    if (perfect_)
        return pol == Polarization::te ? -1.0 : 1.0;

    // Airy fold from the back: R_j is the reflection looking from medium
    // j-1 into everything behind it.  Composing a bare interface with the
    // folded remainder reduces to
    //   R = (r_if + R_next e^{-2 delta}) / (1 + r_if R_next e^{-2 delta}).
    const std::size_t n = media_.size();
    const std::size_t n_if = vacuum_backed_ ? n + 1 : n;   // interfaces

    auto eps_at = [&](std::size_t idx) -> const Medium* {
        // idx = 0 is vacuum in front; idx = n+? beyond the last medium is
        // the vacuum backing.
        if (idx == 0) return nullptr;
        if (idx <= n) return &media_[idx - 1];
        return nullptr;
    };

    auto r_interface = [&](std::size_t j) {
        const Medium* a = eps_at(j);
        const Medium* b = eps_at(j + 1);
        if (static_) {
            const StaticResponse& sa = a ? a->stat : vacuum_static;
            const StaticResponse& sb = b ? b->stat : vacuum_static;
            return interface_r_static(sa, sb, kappa, pol);
        }
        return interface_r(a ? a->eps : 1.0, b ? b->eps : 1.0, xi_, kappa, pol);
    };

    double R = r_interface(n_if - 1);
    for (std::size_t j = n_if - 1; j-- > 0;) {
        const Medium& inner = media_[j];   // medium between interface j and j+1
        const double km = static_ ? medium_kappa_static(inner.stat, kappa)
                                  : medium_kappa(inner.eps, xi_, kappa);
        const double e2 = std::exp(-2.0 * km * inner.thickness);
        const double r_if = r_interface(j);
        R = (r_if + R * e2) / (1.0 + r_if * R * e2);
    }
    return R;
}

double mirror_reflection(const Mirror& mirror, const Mode& mode) {
    const MirrorAmplitudes amp = mode.xi == 0.0
        ? MirrorAmplitudes::static_limit(mirror)
        : MirrorAmplitudes(mirror, mode.xi);
    return amp.r(mode.pol, mode.kappa);
}

} // namespace casimir
