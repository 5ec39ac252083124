// SPDX-License-Identifier: Apache-2.0

#include "beamcover/config.hpp"

#include "beamcover/errors.hpp"
#include "beamcover/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace beamcover {

namespace {

const std::set<std::string> kSections = {"geometry", "threshold", "visibility", "grid",
                                         "analyze",  "simulate",  "output",     "manifest"};

void reject_unknown(const YAML::Node& node, const std::string& section, const std::set<std::string>& allowed) {
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) throw ConfigError(fmt::format("{}.{}: unknown key", section, key));
    }
}

YAML::Node section_of(const YAML::Node& root, const std::string& name, bool required) {
    const auto node = root[name];
    if (!node) {
        if (required) throw ConfigError(fmt::format("{}: missing required section", name));
        return {};
    }
    if (!node.IsMap()) throw ConfigError(fmt::format("{}: expected a mapping", name));
    return node;
}

template <class T>
T scalar(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) throw ConfigError(fmt::format("{}: expected a scalar value", field));
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(fmt::format("{}: cannot parse '{}'", field, node.Scalar()));
    }
}

template <class T>
std::optional<T> optional_scalar(const YAML::Node& section, const std::string& sec, const std::string& key) {
    if (!section || !section[key]) return std::nullopt;
    return scalar<T>(section[key], sec + "." + key);
}

std::string num(double v) { return fmt::format("{}", v); }

} // namespace

ArrayGeometry RunConfig::array_geometry() const {
    const auto& g = geometry;
    double d1 = 0.0;
    if (g.d1_over_lambda) {
        d1 = *g.d1_over_lambda;
    } else {
        d1 = ArrayGeometry::spacing_ratio(*g.spacing_m, *g.carrier_ghz);
    }
    double d2 = d1;
    if (g.d2_over_lambda) {
        d2 = *g.d2_over_lambda;
    } else if (g.spacing_y_m) {
        d2 = ArrayGeometry::spacing_ratio(*g.spacing_y_m, *g.carrier_ghz);
    }
    ArrayGeometry geom{g.kind, g.n1, g.kind == ArrayKind::ula ? 1 : g.n2, d1, g.kind == ArrayKind::ula ? d1 : d2,
                       g.path_gain};
    geom.validate();
    return geom;
}

PhaseShifterSpec RunConfig::phase_spec() const {
    return geometry.bits ? PhaseShifterSpec::with_bits(*geometry.bits) : PhaseShifterSpec::unquantized();
}

ThresholdSpec RunConfig::threshold_spec() const {
    return threshold.gamma_f ? ThresholdSpec::from_factor(*threshold.gamma_f)
                             : ThresholdSpec::from_db(*threshold.gamma_db);
}

double RunConfig::grid_step_x() const {
    return step_x_deg.value_or(geometry.kind == ArrayKind::ula ? 0.1 : 0.5);
}

double RunConfig::grid_step_y() const {
    return step_y_deg.value_or(geometry.kind == ArrayKind::ula ? 0.1 : 0.5);
}

void RunConfig::validate() const {
    const auto& g = geometry;
    if (g.n1 < 1) throw ConfigError("geometry.n1: must be >= 1");
    if (g.n2 < 1) throw ConfigError("geometry.n2: must be >= 1");
    if (g.kind == ArrayKind::ula && g.n2 != 1) throw ConfigError("geometry.n2: a ULA has n2 = 1");
    if (g.d1_over_lambda && (g.spacing_m || g.carrier_ghz)) {
        throw ConfigError("geometry.d1_over_lambda: give either d1_over_lambda or spacing_m + carrier_ghz, not both");
    }
    if (!g.d1_over_lambda && !(g.spacing_m && g.carrier_ghz)) {
        throw ConfigError("geometry.d1_over_lambda: missing (or give spacing_m and carrier_ghz)");
    }
    if (g.d1_over_lambda && !(*g.d1_over_lambda > 0.0)) throw ConfigError("geometry.d1_over_lambda: must be > 0");
    if (g.d2_over_lambda && !(*g.d2_over_lambda > 0.0)) throw ConfigError("geometry.d2_over_lambda: must be > 0");
    if (g.spacing_m && !(*g.spacing_m > 0.0)) throw ConfigError("geometry.spacing_m: must be > 0");
    if (g.carrier_ghz && !(*g.carrier_ghz > 0.0)) throw ConfigError("geometry.carrier_ghz: must be > 0");
    if (g.spacing_y_m && !g.carrier_ghz) throw ConfigError("geometry.spacing_y_m: requires carrier_ghz");
    if (g.spacing_y_m && !(*g.spacing_y_m > 0.0)) throw ConfigError("geometry.spacing_y_m: must be > 0");
    if (!(g.path_gain > 0.0)) throw ConfigError("geometry.path_gain: must be > 0");
    if (g.bits && (*g.bits < 1 || *g.bits > 30)) throw ConfigError("geometry.bits: must be in [1, 30]");

    if (threshold.gamma_db.has_value() == threshold.gamma_f.has_value()) {
        throw ConfigError("threshold.gamma_db: give exactly one of gamma_db or gamma_f");
    }
    if (threshold.gamma_db && !(*threshold.gamma_db > 0.0)) throw ConfigError("threshold.gamma_db: must be > 0");
    if (threshold.gamma_f && !(*threshold.gamma_f > 1.0)) throw ConfigError("threshold.gamma_f: must be > 1");

    auto check_range = [](const AngleRange& r, const char* axis) {
        if (r.min_deg < -90.0 || r.max_deg > 90.0 || r.min_deg > r.max_deg) {
            throw ConfigError(fmt::format("visibility.{}_min_deg: range [{}, {}] must satisfy -90 <= min <= max <= 90",
                                          axis, r.min_deg, r.max_deg));
        }
    };
    check_range(visibility_x, "x");
    if (g.kind == ArrayKind::ura) check_range(visibility_y, "y");

    if (!(grid_step_x() > 0.0)) throw ConfigError("grid.step_x_deg: must be > 0");
    if (!(grid_step_y() > 0.0)) throw ConfigError("grid.step_y_deg: must be > 0");
    if (candidate_step_deg) {
        if (!(*candidate_step_deg > 0.0)) throw ConfigError("grid.candidate_step_deg: must be > 0");
        const double limit = g.kind == ArrayKind::ura ? std::min(grid_step_x(), grid_step_y()) : grid_step_x();
        if (*candidate_step_deg > limit) throw ConfigError("grid.candidate_step_deg: must not exceed the grid step");
    }

    if (analyze.thetas_deg.empty()) throw ConfigError("analyze.thetas_deg: must not be empty");
    for (const double t : analyze.thetas_deg) {
        if (std::abs(t) > 90.0) throw ConfigError("analyze.thetas_deg: angles must lie in [-90, 90]");
    }
    if (!(analyze.delta_max_deg > 0.0)) throw ConfigError("analyze.delta_max_deg: must be > 0");
    if (!(analyze.delta_step_deg > 0.0)) throw ConfigError("analyze.delta_step_deg: must be > 0");
    if (!(analyze.scan_step_deg > 0.0)) throw ConfigError("analyze.scan_step_deg: must be > 0");

    if (simulate.n_trials < 1) throw ConfigError("simulate.n_trials: must be >= 1");
    if (!(simulate.noise_std_db >= 0.0)) throw ConfigError("simulate.noise_std_db: must be >= 0");

    try {
        (void)array_geometry();
        (void)threshold_spec();
    } catch (const Error& e) {
        throw ConfigError(std::string("geometry: ") + e.what());
    }
}

RunConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(fmt::format("config: malformed YAML ({})", e.what()));
    }
    if (!root || !root.IsMap()) throw ConfigError("config: expected a mapping of sections");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!kSections.count(key)) throw ConfigError(fmt::format("{}: unknown section", key));
    }

    RunConfig cfg;

    const auto geo = section_of(root, "geometry", true);
    reject_unknown(geo, "geometry",
                   {"kind", "n1", "n2", "d1_over_lambda", "d2_over_lambda", "spacing_m", "spacing_y_m", "carrier_ghz",
                    "path_gain", "bits"});
    if (!geo["kind"]) throw ConfigError("geometry.kind: missing");
    try {
        cfg.geometry.kind = parse_array_kind(scalar<std::string>(geo["kind"], "geometry.kind"));
    } catch (const InvalidGeometry& e) {
        throw ConfigError(std::string("geometry.kind: ") + e.what());
    }
    if (!geo["n1"]) throw ConfigError("geometry.n1: missing");
    cfg.geometry.n1 = scalar<int>(geo["n1"], "geometry.n1");
    cfg.geometry.n2 = optional_scalar<int>(geo, "geometry", "n2").value_or(1);
    if (cfg.geometry.kind == ArrayKind::ura && !geo["n2"]) throw ConfigError("geometry.n2: missing for a URA");
    cfg.geometry.d1_over_lambda = optional_scalar<double>(geo, "geometry", "d1_over_lambda");
    cfg.geometry.d2_over_lambda = optional_scalar<double>(geo, "geometry", "d2_over_lambda");
    cfg.geometry.spacing_m = optional_scalar<double>(geo, "geometry", "spacing_m");
    cfg.geometry.spacing_y_m = optional_scalar<double>(geo, "geometry", "spacing_y_m");
    cfg.geometry.carrier_ghz = optional_scalar<double>(geo, "geometry", "carrier_ghz");
    cfg.geometry.path_gain = optional_scalar<double>(geo, "geometry", "path_gain").value_or(1.0);
    cfg.geometry.bits = optional_scalar<int>(geo, "geometry", "bits");

    const auto thr = section_of(root, "threshold", true);
    reject_unknown(thr, "threshold", {"gamma_db", "gamma_f"});
    cfg.threshold.gamma_db = optional_scalar<double>(thr, "threshold", "gamma_db");
    cfg.threshold.gamma_f = optional_scalar<double>(thr, "threshold", "gamma_f");

    if (const auto vis = section_of(root, "visibility", false)) {
        reject_unknown(vis, "visibility", {"x_min_deg", "x_max_deg", "y_min_deg", "y_max_deg"});
        cfg.visibility_x.min_deg = optional_scalar<double>(vis, "visibility", "x_min_deg").value_or(-60.0);
        cfg.visibility_x.max_deg = optional_scalar<double>(vis, "visibility", "x_max_deg").value_or(60.0);
        cfg.visibility_y.min_deg = optional_scalar<double>(vis, "visibility", "y_min_deg").value_or(-60.0);
        cfg.visibility_y.max_deg = optional_scalar<double>(vis, "visibility", "y_max_deg").value_or(60.0);
    }

    if (const auto grid = section_of(root, "grid", false)) {
        reject_unknown(grid, "grid", {"step_x_deg", "step_y_deg", "candidate_step_deg"});
        cfg.step_x_deg = optional_scalar<double>(grid, "grid", "step_x_deg");
        cfg.step_y_deg = optional_scalar<double>(grid, "grid", "step_y_deg");
        cfg.candidate_step_deg = optional_scalar<double>(grid, "grid", "candidate_step_deg");
    }

    if (const auto an = section_of(root, "analyze", false)) {
        reject_unknown(an, "analyze", {"thetas_deg", "delta_max_deg", "delta_step_deg", "scan_step_deg"});
        if (const auto list = an["thetas_deg"]) {
            if (!list.IsSequence()) throw ConfigError("analyze.thetas_deg: expected a list");
            cfg.analyze.thetas_deg.clear();
            for (const auto& item : list) cfg.analyze.thetas_deg.push_back(scalar<double>(item, "analyze.thetas_deg"));
        }
        cfg.analyze.delta_max_deg = optional_scalar<double>(an, "analyze", "delta_max_deg").value_or(20.0);
        cfg.analyze.delta_step_deg = optional_scalar<double>(an, "analyze", "delta_step_deg").value_or(0.1);
        cfg.analyze.scan_step_deg = optional_scalar<double>(an, "analyze", "scan_step_deg").value_or(1e-4);
    }

    if (const auto sim = section_of(root, "simulate", false)) {
        reject_unknown(sim, "simulate", {"n_trials", "seed", "noise_std_db"});
        const auto trials = optional_scalar<long long>(sim, "simulate", "n_trials").value_or(10000);
        if (trials < 1) throw ConfigError("simulate.n_trials: must be >= 1");
        cfg.simulate.n_trials = static_cast<std::size_t>(trials);
        cfg.simulate.seed = optional_scalar<std::uint64_t>(sim, "simulate", "seed").value_or(1);
        cfg.simulate.noise_std_db = optional_scalar<double>(sim, "simulate", "noise_std_db").value_or(0.0);
    }

    if (const auto out = section_of(root, "output", false)) {
        reject_unknown(out, "output", {"directory"});
        cfg.output_directory = optional_scalar<std::string>(out, "output", "directory").value_or("out");
    }

    if (const auto man = section_of(root, "manifest", false)) {
        reject_unknown(man, "manifest",
                       {"tool_version", "fingerprint", "geometry_fingerprint", "d1_over_lambda", "d2_over_lambda",
                        "gamma_f"});
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("config: cannot open '{}'", path));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string RunConfig::canonical_yaml() const {
    const auto& g = geometry;
    std::string out;
    auto line = [&out](const std::string& s) {
        out += s;
        out += '\n';
    };
    line("geometry:");
    line("  kind: " + to_string(g.kind));
    line(fmt::format("  n1: {}", g.n1));
    line(fmt::format("  n2: {}", g.kind == ArrayKind::ula ? 1 : g.n2));
    if (g.d1_over_lambda) line("  d1_over_lambda: " + num(*g.d1_over_lambda));
    if (g.d2_over_lambda) line("  d2_over_lambda: " + num(*g.d2_over_lambda));
    if (g.spacing_m) line("  spacing_m: " + num(*g.spacing_m));
    if (g.spacing_y_m) line("  spacing_y_m: " + num(*g.spacing_y_m));
    if (g.carrier_ghz) line("  carrier_ghz: " + num(*g.carrier_ghz));
    line("  path_gain: " + num(g.path_gain));
    if (g.bits) line(fmt::format("  bits: {}", *g.bits));
    line("threshold:");
    if (threshold.gamma_db) line("  gamma_db: " + num(*threshold.gamma_db));
    if (threshold.gamma_f) line("  gamma_f: " + num(*threshold.gamma_f));
    line("visibility:");
    line("  x_min_deg: " + num(visibility_x.min_deg));
    line("  x_max_deg: " + num(visibility_x.max_deg));
    line("  y_min_deg: " + num(visibility_y.min_deg));
    line("  y_max_deg: " + num(visibility_y.max_deg));
    line("grid:");
    line("  step_x_deg: " + num(grid_step_x()));
    line("  step_y_deg: " + num(grid_step_y()));
    if (candidate_step_deg) line("  candidate_step_deg: " + num(*candidate_step_deg));
    line("analyze:");
    std::string thetas;
    for (std::size_t k = 0; k < analyze.thetas_deg.size(); ++k) {
        thetas += (k ? ", " : "") + num(analyze.thetas_deg[k]);
    }
    line("  thetas_deg: [" + thetas + "]");
    line("  delta_max_deg: " + num(analyze.delta_max_deg));
    line("  delta_step_deg: " + num(analyze.delta_step_deg));
    line("  scan_step_deg: " + num(analyze.scan_step_deg));
    line("simulate:");
    line(fmt::format("  n_trials: {}", simulate.n_trials));
    line(fmt::format("  seed: {}", simulate.seed));
    line("  noise_std_db: " + num(simulate.noise_std_db));
    return out;
}

std::string RunConfig::fingerprint() const { return text::fnv1a_hex(canonical_yaml()); }

std::string manifest_yaml(const RunConfig& config) {
    const auto geom = config.array_geometry();
    const auto threshold = config.threshold_spec();
    std::string out = config.canonical_yaml();
    out += "manifest:\n";
    out += fmt::format("  tool_version: \"{}\"\n", BEAMCOVER_VERSION);
    out += fmt::format("  fingerprint: \"{}\"\n", config.fingerprint());
    out += fmt::format("  geometry_fingerprint: \"{}\"\n", geometry_fingerprint(geom, config.phase_spec()));
    out += "  d1_over_lambda: " + num(geom.d1_over_lambda) + "\n";
    out += "  d2_over_lambda: " + num(geom.d2_over_lambda) + "\n";
    out += "  gamma_f: " + num(threshold.gamma_f) + "\n";
    return out;
}

} // namespace beamcover
