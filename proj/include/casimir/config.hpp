#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/perturbations.hpp"
#include "casimir/thermal.hpp"

namespace casimir {

// Flat `key = value` run configuration: dotted keys, '#' comments, one
// assignment per line.  Keys are checked against the full vocabulary when
// the file is loaded, so typos fail with a line number instead of being
// silently ignored.  Every value a run consumes, defaults included, is
// recorded and can be echoed into output headers.
class ConfigFile {
public:
    static ConfigFile load(const std::string& path);
    static ConfigFile parse(std::istream& in, const std::string& origin);

    bool has(const std::string& key) const;
    bool has_prefix(const std::string& prefix) const;

    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    // Lower-cased variant for enumerated values.
    std::string get_choice(const std::string& key, const std::string& fallback);
    double get_double(const std::string& key);
    double get_double(const std::string& key, double fallback);
    int get_int(const std::string& key, int fallback);

    // Quantities whose unit rides on the key name.  Exactly one suffixed
    // spelling may appear; values are converted to SI.
    double get_length(const std::string& base);                  // _m, _um, _nm
    std::optional<double> maybe_length(const std::string& base);
    double get_frequency(const std::string& base);               // _ev, _rad_s
    std::optional<double> maybe_frequency(const std::string& base);
    std::optional<double> maybe_area(const std::string& base);   // _m2, _cm2

    // ConfigError anchored at the key's source line (or at the file when
    // the key is absent).
    ConfigError error_at(const std::string& key, const std::string& message) const;

    void note(const std::string& key, const std::string& value);
    void note(const std::string& key, double value);
    // The consumed configuration after defaults, sorted by key.
    std::vector<std::pair<std::string, std::string>> resolved() const;

private:
    struct Entry {
        std::string value;
        int line;
    };

    std::string origin_{"<none>"};
    std::map<std::string, Entry> entries_;
    std::map<std::string, std::string> resolved_;
};

struct SweepSpec {
    double start;
    double stop;
    int count;
    bool log_spacing;
};

std::vector<double> sweep_points(const SweepSpec& sweep);

// scene.* plus both mirror blocks.  Exactly one of scene.spacing_* and
// scene.sweep.* must be present when `need_spacing` is set.
struct SceneConfig {
    Mirror mirror1;
    Mirror mirror2;
    double area = 1.0;
    double temperature = 0.0;
    std::optional<double> spacing;
    std::optional<SweepSpec> sweep;

    CavityConfig cavity_at(double L) const { return {mirror1, mirror2, L, area, temperature}; }
};

SceneConfig config_scene(ConfigFile& cfg, bool need_spacing);

Mirror config_mirror(ConfigFile& cfg, const std::string& prefix);
DielectricModel config_model(ConfigFile& cfg, const std::string& prefix);
QuadratureSpec config_quadrature(ConfigFile& cfg);

struct GeometryConfig {
    bool plane_sphere = false;
    double radius = 0.0;   // set when plane_sphere
};

GeometryConfig config_geometry(ConfigFile& cfg);

M0Prescription config_m0(ConfigFile& cfg);
SeriesSpec config_series(ConfigFile& cfg);
RoughnessSpectrum config_roughness(ConfigFile& cfg);
CorrugationSpec config_corrugation(ConfigFile& cfg);
std::optional<SweepSpec> config_length_sweep(ConfigFile& cfg, const std::string& prefix);

} // namespace casimir
