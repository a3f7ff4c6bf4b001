#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir {

enum class Polarization { te, tm };

// One transverse mode on the imaginary frequency axis.  kappa is the vacuum
// decay constant sqrt(k^2 + xi^2/c^2); both constructors keep the triple
// consistent.
struct Mode {
    double xi;      // rad/s
    double k;       // 1/m
    double kappa;   // 1/m
    Polarization pol;
};

Mode mode_from_xi_k(double xi, double k, Polarization pol);
Mode mode_from_xi_kappa(double xi, double kappa, Polarization pol);

struct Perfect {};

struct Bulk {
    DielectricModel model;
};

struct SlabMirror {
    DielectricModel model;
    double thickness;   // m
};

struct Layer {
    DielectricModel model;
    double thickness;   // m
};

// Finite layers seen from vacuum, optionally terminated by a bulk substrate
// (nullopt = vacuum behind the last layer).
struct Stack {
    std::vector<Layer> layers;
    std::optional<DielectricModel> substrate;
};

using Mirror = std::variant<Perfect, Bulk, SlabMirror, Stack>;

// Vacuum-to-bulk Fresnel amplitude on the imaginary axis.  Sign convention:
// a perfectly reflecting medium (eps -> inf) gives r_TE -> -1, r_TM -> +1,
// so identical mirrors give the same positive round-trip in both
// polarizations.  All amplitudes are real here.
double fresnel_bulk(const DielectricModel& model, const Mode& mode);

// Fabry-Perot reflection of a slab of finite thickness in vacuum.
double slab_reflection(const DielectricModel& model, double thickness, const Mode& mode);

// Reciprocal two-port with real amplitudes.  A bare interface has
// r_back = -r and t^2 = 1 - r^2 (Stokes relations); propagation over an
// optical path delta is {0, 0, e^{-delta}}.
struct ScatterPair {
    double r;        // reflection seen from the front
    double r_back;   // reflection seen from the back
    double t;        // transmission, equal in both directions
};

// Composes network b behind network a, with the one-way propagation factor
// between them absorbed into b's amplitudes.  Throws std::domain_error when
// the cavity denominator vanishes.
ScatterPair stack_compose(const ScatterPair& a, const ScatterPair& b, double propagation);

// Interface pair between two media (vacuum = nullopt) for a given mode.
ScatterPair interface_pair(const std::optional<DielectricModel>& front,
                           const std::optional<DielectricModel>& back,
                           const Mode& mode);

// Reflection amplitude of an arbitrary mirror for one mode.
double mirror_reflection(const Mirror& mirror, const Mode& mode);

// A mirror frozen at one imaginary frequency: the dielectric functions are
// evaluated once, after which r(pol, kappa) is cheap.  xi = 0 uses the
// exact static limits of the models instead of evaluating eps at 0.
class MirrorAmplitudes {
public:
    MirrorAmplitudes(const Mirror& mirror, double xi);
    static MirrorAmplitudes static_limit(const Mirror& mirror);

    double r(Polarization pol, double kappa) const;

private:
    MirrorAmplitudes() = default;

    struct Medium {
        // xi > 0: eps value.  xi = 0: static response.
        double eps = 1.0;
        StaticResponse stat{0, 1.0, 0.0};
        double thickness = 0.0;   // 0 for the substrate entry
    };

    bool perfect_ = false;
    bool static_ = false;
    double xi_ = 0.0;
    std::vector<Medium> media_;     // layers front to back, then substrate
    bool vacuum_backed_ = true;     // substrate entry absent
};

} // namespace casimir
