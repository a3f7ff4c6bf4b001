#include "casimir/config.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "casimir/constants.hpp"

namespace casimir {

namespace {

using constants::ev_to_rad_s;
using constants::pi;

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> segs;
    std::string cur;
    for (char c : key) {
        if (c == '.') {
            segs.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    segs.push_back(cur);
    return segs;
}

bool length_key(const std::string& s, const std::string& base) {
    return s == base + "_m" || s == base + "_um" || s == base + "_nm";
}

bool model_key(const std::string& s) {
    return s == "model" || s == "omega_p_ev" || s == "omega_p_rad_s" || s == "gamma_ev" ||
           s == "gamma_rad_s" || s == "table" || s == "table_unit" || s == "extrapolation";
}

bool sweep_key(const std::string& s) {
    return length_key(s, "start") || length_key(s, "stop") || s == "count" || s == "spacing";
}

bool layer_segment(const std::string& s) {
    if (s.rfind("layer", 0) != 0 || s.size() == 5) return false;
    for (std::size_t i = 5; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return s[5] != '0';
}

bool key_known(const std::string& key) {
    const auto segs = split_key(key);
    for (const auto& s : segs)
        if (s.empty()) return false;
    const std::string& head = segs[0];

    if (head == "scene") {
        if (segs.size() == 2)
            return length_key(segs[1], "spacing") || segs[1] == "area_m2" ||
                   segs[1] == "area_cm2" || segs[1] == "temperature_k";
        if (segs.size() == 3 && segs[1] == "sweep") return sweep_key(segs[2]);
        return false;
    }
    if (head == "mirror1" || head == "mirror2") {
        if (segs.size() == 2)
            return segs[1] == "type" || model_key(segs[1]) || length_key(segs[1], "thickness");
        if (segs.size() == 3 && segs[1] == "substrate") return model_key(segs[2]);
        if (segs.size() == 3 && layer_segment(segs[1]))
            return model_key(segs[2]) || length_key(segs[2], "thickness");
        return false;
    }
    if (head == "geometry")
        return segs.size() == 2 && (segs[1] == "type" || length_key(segs[1], "radius"));
    if (head == "thermal")
        return segs.size() == 2 &&
               (segs[1] == "m0" || segs[1] == "n_max" ||
                segs[1] == "points_per_half_period" || segs[1] == "decay_cutoff" ||
                segs[1] == "series_rel_tol");
    if (head == "quadrature")
        return segs.size() == 2 &&
               (segs[1] == "rel_tol" || segs[1] == "abs_tol" || segs[1] == "max_subdivisions" ||
                segs[1] == "inner_min_points" || segs[1] == "inner_max_points");
    if (head == "materials") return segs.size() == 2 && segs[1] == "table_unit";
    if (head == "roughness")
        return segs.size() == 2 &&
               (segs[1] == "variance_m2" || length_key(segs[1], "amplitude") ||
                segs[1] == "spectrum" || segs[1] == "sensitivity_k_rad_m");
    if (head == "corrugation") {
        if (segs.size() == 2)
            return length_key(segs[1], "a1") || length_key(segs[1], "a2") ||
                   segs[1] == "k_rad_m" || length_key(segs[1], "wavelength") ||
                   length_key(segs[1], "b");
        if (segs.size() == 3 && segs[1] == "sweep") return sweep_key(segs[2]);
        return false;
    }
    if (head == "scan")
        return segs.size() == 2 &&
               (segs[1] == "start" || segs[1] == "stop" || segs[1] == "count" ||
                segs[1] == "omega_p_ev" || segs[1] == "omega_p_rad_s" ||
                segs[1] == "gamma_over_omega_p");
    if (head == "show")
        return segs.size() == 2 &&
               (segs[1] == "start_ev" || segs[1] == "stop_ev" || segs[1] == "count");
    if (head == "output") return segs.size() == 2 && segs[1] == "path";
    return false;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto where = origin + ":" + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(where + ": empty key");
        for (char c : key)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
                throw ConfigError(where + ": bad character in key '" + key + "'");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (value.empty())
            throw ConfigError(where + ": empty value for '" + key + "'");
        if (!key_known(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
        if (const auto it = cfg.entries_.find(key); it != cfg.entries_.end())
            throw ConfigError(where + ": duplicate key '" + key + "' (first set on line " +
                              std::to_string(it->second.line) + ")");
        cfg.entries_[key] = {value, lineno};
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open config");
    return parse(in, path);
}

bool ConfigFile::has(const std::string& key) const {
    return entries_.count(key) != 0;
}

bool ConfigFile::has_prefix(const std::string& prefix) const {
    const auto it = entries_.lower_bound(prefix);
    return it != entries_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
}

std::string ConfigFile::get_string(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end())
        throw error_at(key, "missing required key");
    resolved_[key] = it->second.value;
    return it->second.value;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) {
    if (!has(key)) {
        resolved_[key] = fallback;
        return fallback;
    }
    return get_string(key);
}

std::string ConfigFile::get_choice(const std::string& key, const std::string& fallback) {
    const std::string v = lower(has(key) ? get_string(key) : fallback);
    resolved_[key] = v;
    return v;
}

double ConfigFile::get_double(const std::string& key) {
    const std::string v = get_string(key);
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
        throw error_at(key, "expected a number, got '" + v + "'");
    return x;
}

double ConfigFile::get_double(const std::string& key, double fallback) {
    if (!has(key)) {
        resolved_[key] = format_double(fallback);
        return fallback;
    }
    return get_double(key);
}

int ConfigFile::get_int(const std::string& key, int fallback) {
    if (!has(key)) {
        resolved_[key] = std::to_string(fallback);
        return fallback;
    }
    const double x = get_double(key);
    const int n = static_cast<int>(x);
    if (static_cast<double>(n) != x)
        throw error_at(key, "expected an integer");
    return n;
}

namespace {

struct UnitSuffix {
    const char* suffix;
    double scale;
};

constexpr std::array<UnitSuffix, 3> length_units{{{"_m", 1.0}, {"_um", 1e-6}, {"_nm", 1e-9}}};
constexpr std::array<UnitSuffix, 2> frequency_units{{{"_ev", ev_to_rad_s}, {"_rad_s", 1.0}}};
constexpr std::array<UnitSuffix, 2> area_units{{{"_m2", 1.0}, {"_cm2", 1e-4}}};

} // namespace

template <std::size_t N>
static std::optional<double> suffixed_value(ConfigFile& cfg, const std::string& base,
                                            const std::array<UnitSuffix, N>& units) {
    std::optional<double> out;
    std::string found;
    for (const auto& u : units) {
        const std::string key = base + u.suffix;
        if (!cfg.has(key)) continue;
        if (out)
            throw cfg.error_at(key, "conflicts with '" + found + "'; give one spelling");
        out = cfg.get_double(key) * u.scale;
        found = key;
    }
    return out;
}

std::optional<double> ConfigFile::maybe_length(const std::string& base) {
    return suffixed_value(*this, base, length_units);
}

double ConfigFile::get_length(const std::string& base) {
    if (const auto v = maybe_length(base)) return *v;
    throw error_at(base + "_m", "missing length (accepted suffixes: _m, _um, _nm)");
}

std::optional<double> ConfigFile::maybe_frequency(const std::string& base) {
    return suffixed_value(*this, base, frequency_units);
}

double ConfigFile::get_frequency(const std::string& base) {
    if (const auto v = maybe_frequency(base)) return *v;
    throw error_at(base + "_ev", "missing frequency (accepted suffixes: _ev, _rad_s)");
}

std::optional<double> ConfigFile::maybe_area(const std::string& base) {
    return suffixed_value(*this, base, area_units);
}

ConfigError ConfigFile::error_at(const std::string& key, const std::string& message) const {
    const auto it = entries_.find(key);
    if (it != entries_.end())
        return ConfigError(origin_ + ":" + std::to_string(it->second.line) + ": " + key + ": " +
                           message);
    return ConfigError(origin_ + ": " + key + ": " + message);
}

void ConfigFile::note(const std::string& key, const std::string& value) {
    resolved_[key] = value;
}

void ConfigFile::note(const std::string& key, double value) {
    resolved_[key] = format_double(value);
}

std::vector<std::pair<std::string, std::string>> ConfigFile::resolved() const {
    return {resolved_.begin(), resolved_.end()};
}

std::vector<double> sweep_points(const SweepSpec& sweep) {
    std::vector<double> pts(sweep.count);
    for (int i = 0; i < sweep.count; ++i) {
        const double t = sweep.count == 1 ? 0.0 : static_cast<double>(i) / (sweep.count - 1);
        pts[i] = sweep.log_spacing ? sweep.start * std::pow(sweep.stop / sweep.start, t)
                                   : sweep.start + (sweep.stop - sweep.start) * t;
    }
    return pts;
}

DielectricModel config_model(ConfigFile& cfg, const std::string& prefix) {
    const std::string choice = cfg.get_choice(prefix + ".model", "");
    if (choice.empty())
        throw cfg.error_at(prefix + ".model", "missing dielectric model (plasma, drude, table)");
    if (choice == "plasma") {
        const double wp = cfg.get_frequency(prefix + ".omega_p");
        if (!(wp > 0.0)) throw cfg.error_at(prefix + ".omega_p_ev", "omega_p must be positive");
        return Plasma{wp};
    }
    if (choice == "drude") {
        const double wp = cfg.get_frequency(prefix + ".omega_p");
        const double gamma = cfg.get_frequency(prefix + ".gamma");
        if (!(wp > 0.0)) throw cfg.error_at(prefix + ".omega_p_ev", "omega_p must be positive");
        if (!(gamma >= 0.0)) throw cfg.error_at(prefix + ".gamma_ev", "gamma must be >= 0");
        return Drude{wp, gamma};
    }
    if (choice == "table") {
        const std::string path = cfg.get_string(prefix + ".table");
        std::string unit_str;
        if (cfg.has(prefix + ".table_unit"))
            unit_str = cfg.get_choice(prefix + ".table_unit", "");
        else if (cfg.has("materials.table_unit"))
            unit_str = cfg.get_choice("materials.table_unit", "");
        else
            throw cfg.error_at(prefix + ".table_unit",
                               "table unit required: set this key or materials.table_unit "
                               "to ev or rad_s");
        FrequencyUnit unit;
        if (unit_str == "ev")
            unit = FrequencyUnit::ev;
        else if (unit_str == "rad_s")
            unit = FrequencyUnit::rad_s;
        else
            throw cfg.error_at(prefix + ".table_unit",
                               "bad unit '" + unit_str + "' (ev or rad_s)");
        auto table = std::make_shared<OpticalDataTable>(load_optical_table(path, unit));
        std::optional<Drude> below;
        const std::string extr = cfg.get_choice(prefix + ".extrapolation", "none");
        if (extr == "drude") {
            below = Drude{cfg.get_frequency(prefix + ".omega_p"),
                          cfg.get_frequency(prefix + ".gamma")};
        } else if (extr != "none") {
            throw cfg.error_at(prefix + ".extrapolation",
                               "bad extrapolation '" + extr + "' (none or drude)");
        }
        return Tabulated{std::move(table), below};
    }
    throw cfg.error_at(prefix + ".model", "unknown model '" + choice +
                                          "' (plasma, drude, table)");
}

Mirror config_mirror(ConfigFile& cfg, const std::string& prefix) {
    if (!cfg.has(prefix + ".type"))
        throw cfg.error_at(prefix + ".type",
                           "missing mirror definition (perfect, bulk, slab, stack)");
    const std::string type = cfg.get_choice(prefix + ".type", "");
    if (type == "perfect") return Perfect{};
    if (type == "bulk") return Bulk{config_model(cfg, prefix)};
    if (type == "slab") {
        const double d = cfg.get_length(prefix + ".thickness");
        if (!(d > 0.0))
            throw cfg.error_at(prefix + ".thickness_m", "thickness must be positive");
        return SlabMirror{config_model(cfg, prefix), d};
    }
    if (type == "stack") {
        Stack stack;
        for (int i = 1;; ++i) {
            const std::string lp = prefix + ".layer" + std::to_string(i);
            if (!cfg.has_prefix(lp + ".")) break;
            const double d = cfg.get_length(lp + ".thickness");
            if (!(d > 0.0))
                throw cfg.error_at(lp + ".thickness_m", "thickness must be positive");
            stack.layers.push_back({config_model(cfg, lp), d});
        }
        if (cfg.has_prefix(prefix + ".substrate."))
            stack.substrate = config_model(cfg, prefix + ".substrate");
        if (stack.layers.empty() && !stack.substrate)
            throw cfg.error_at(prefix + ".type",
                               "stack needs layer1... blocks and/or a substrate block");
        return stack;
    }
    throw cfg.error_at(prefix + ".type",
                       "unknown mirror type '" + type + "' (perfect, bulk, slab, stack)");
}

std::optional<SweepSpec> config_length_sweep(ConfigFile& cfg, const std::string& prefix) {
    if (!cfg.has_prefix(prefix + ".")) return std::nullopt;
    SweepSpec sweep{};
    sweep.start = cfg.get_length(prefix + ".start");
    sweep.stop = cfg.get_length(prefix + ".stop");
    sweep.count = cfg.get_int(prefix + ".count", 0);
    if (sweep.count < 2)
        throw cfg.error_at(prefix + ".count", "sweep needs count >= 2");
    const std::string spacing = cfg.get_choice(prefix + ".spacing", "linear");
    if (spacing == "linear")
        sweep.log_spacing = false;
    else if (spacing == "log")
        sweep.log_spacing = true;
    else
        throw cfg.error_at(prefix + ".spacing", "spacing must be linear or log");
    if (sweep.log_spacing && (!(sweep.start > 0.0) || !(sweep.stop > 0.0)))
        throw cfg.error_at(prefix + ".start_m", "log sweep bounds must be positive");
    return sweep;
}

SceneConfig config_scene(ConfigFile& cfg, bool need_spacing) {
    SceneConfig scene;
    scene.mirror1 = config_mirror(cfg, "mirror1");
    scene.mirror2 = config_mirror(cfg, "mirror2");
    if (const auto area = cfg.maybe_area("scene.area")) {
        if (!(*area > 0.0))
            throw cfg.error_at("scene.area_m2", "area must be positive");
        scene.area = *area;
    } else {
        cfg.note("scene.area_m2", scene.area);
    }
    scene.temperature = cfg.get_double("scene.temperature_k", 0.0);
    if (scene.temperature < 0.0)
        throw cfg.error_at("scene.temperature_k", "temperature must be >= 0");
    scene.spacing = cfg.maybe_length("scene.spacing");
    scene.sweep = config_length_sweep(cfg, "scene.sweep");
    if (scene.spacing && scene.sweep)
        throw cfg.error_at("scene.spacing_m",
                           "give either scene.spacing_* or a scene.sweep block, not both");
    if (scene.spacing && !(*scene.spacing > 0.0))
        throw cfg.error_at("scene.spacing_m", "spacing must be positive");
    if (scene.sweep && (!(scene.sweep->start > 0.0) || !(scene.sweep->stop > 0.0)))
        throw cfg.error_at("scene.sweep.start_m", "spacing sweep bounds must be positive");
    if (need_spacing && !scene.spacing && !scene.sweep)
        throw cfg.error_at("scene.spacing_m",
                           "missing spacing: set scene.spacing_{m,um,nm} or a scene.sweep "
                           "block");
    return scene;
}

QuadratureSpec config_quadrature(ConfigFile& cfg) {
    QuadratureSpec spec;
    spec.rel_tol = cfg.get_double("quadrature.rel_tol", spec.rel_tol);
    spec.abs_tol = cfg.get_double("quadrature.abs_tol", spec.abs_tol);
    spec.max_subdivisions = cfg.get_int("quadrature.max_subdivisions", spec.max_subdivisions);
    spec.inner_min_points = cfg.get_int("quadrature.inner_min_points", spec.inner_min_points);
    spec.inner_max_points = cfg.get_int("quadrature.inner_max_points", spec.inner_max_points);
    if (!(spec.rel_tol > 0.0))
        throw cfg.error_at("quadrature.rel_tol", "rel_tol must be positive");
    if (spec.abs_tol < 0.0)
        throw cfg.error_at("quadrature.abs_tol", "abs_tol must be >= 0");
    if (spec.max_subdivisions < 1)
        throw cfg.error_at("quadrature.max_subdivisions", "need at least one subdivision");
    if (spec.inner_min_points < 8 || spec.inner_max_points < spec.inner_min_points)
        throw cfg.error_at("quadrature.inner_min_points",
                           "need 8 <= inner_min_points <= inner_max_points");
    return spec;
}

GeometryConfig config_geometry(ConfigFile& cfg) {
    GeometryConfig geo;
    const std::string type = cfg.get_choice("geometry.type", "pp");
    if (type == "pp") return geo;
    if (type != "ps")
        throw cfg.error_at("geometry.type", "unknown geometry '" + type + "' (pp or ps)");
    geo.plane_sphere = true;
    geo.radius = cfg.get_length("geometry.radius");
    if (!(geo.radius > 0.0))
        throw cfg.error_at("geometry.radius_m", "radius must be positive");
    return geo;
}

M0Prescription config_m0(ConfigFile& cfg) {
    const std::string m0 = cfg.get_choice("thermal.m0", "half_weight_limit");
    if (m0 == "half_weight_limit") return M0Prescription::half_weight_limit;
    if (m0 == "drude_te_zero") return M0Prescription::drude_te_zero;
    throw cfg.error_at("thermal.m0",
                       "bad prescription '" + m0 + "' (half_weight_limit or drude_te_zero)");
}

SeriesSpec config_series(ConfigFile& cfg) {
    SeriesSpec series;
    series.n_max = cfg.get_int("thermal.n_max", series.n_max);
    series.points_per_half_period =
        cfg.get_int("thermal.points_per_half_period", series.points_per_half_period);
    series.decay_cutoff = cfg.get_double("thermal.decay_cutoff", series.decay_cutoff);
    series.rel_tol = cfg.get_double("thermal.series_rel_tol", series.rel_tol);
    if (series.n_max < 1)
        throw cfg.error_at("thermal.n_max", "need n_max >= 1");
    if (series.points_per_half_period < 2)
        throw cfg.error_at("thermal.points_per_half_period", "need at least 2 points");
    if (!(series.decay_cutoff > 0.0) || series.decay_cutoff >= 1.0)
        throw cfg.error_at("thermal.decay_cutoff", "cutoff must lie in (0, 1)");
    if (!(series.rel_tol > 0.0) || series.rel_tol >= 1.0)
        throw cfg.error_at("thermal.series_rel_tol", "tolerance must lie in (0, 1)");
    return series;
}

RoughnessSpectrum config_roughness(ConfigFile& cfg) {
    const bool has_var = cfg.has("roughness.variance_m2");
    const auto amplitude = cfg.maybe_length("roughness.amplitude");
    const bool has_spec = cfg.has("roughness.spectrum");
    const int given = int(has_var) + int(amplitude.has_value()) + int(has_spec);
    if (given != 1)
        throw cfg.error_at("roughness.variance_m2",
                           "give exactly one of roughness.variance_m2, "
                           "roughness.amplitude_*, roughness.spectrum");
    try {
        if (has_var)
            return RoughnessSpectrum::from_variance(cfg.get_double("roughness.variance_m2"));
        if (amplitude)
            return RoughnessSpectrum::from_variance(*amplitude * *amplitude);
        return RoughnessSpectrum::load(cfg.get_string("roughness.spectrum"));
    } catch (const std::domain_error& e) {
        throw cfg.error_at("roughness.variance_m2", e.what());
    }
}

CorrugationSpec config_corrugation(ConfigFile& cfg) {
    CorrugationSpec corr{};
    corr.a1 = cfg.get_length("corrugation.a1");
    corr.a2 = cfg.get_length("corrugation.a2");
    if (!(corr.a1 >= 0.0) || !(corr.a2 >= 0.0))
        throw cfg.error_at("corrugation.a1_m", "amplitudes must be >= 0");
    const bool has_k = cfg.has("corrugation.k_rad_m");
    const auto wavelength = cfg.maybe_length("corrugation.wavelength");
    if (has_k == wavelength.has_value())
        throw cfg.error_at("corrugation.k_rad_m",
                           "give exactly one of corrugation.k_rad_m and "
                           "corrugation.wavelength_*");
    corr.k = has_k ? cfg.get_double("corrugation.k_rad_m") : 2.0 * pi / *wavelength;
    if (!(corr.k > 0.0))
        throw cfg.error_at("corrugation.k_rad_m", "wavevector must be positive");
    if (const auto b = cfg.maybe_length("corrugation.b")) {
        corr.b = *b;
    } else {
        corr.b = 0.0;
        cfg.note("corrugation.b_m", corr.b);
    }
    return corr;
}

} // namespace casimir
