// SPDX-License-Identifier: Apache-2.0
//
// Run configuration for the command-line tool. The file is YAML with one
// mapping per section:
//
//   geometry:   kind, n1, n2, d1_over_lambda | spacing_m + carrier_ghz,
//               d2_over_lambda | spacing_y_m, path_gain, bits
//   threshold:  gamma_db | gamma_f
//   visibility: x_min_deg, x_max_deg, y_min_deg, y_max_deg
//   grid:       step_x_deg, step_y_deg, candidate_step_deg
//   analyze:    thetas_deg, delta_max_deg, delta_step_deg, scan_step_deg
//   simulate:   n_trials, seed, noise_std_db
//   output:     directory
//   manifest:   written by the tool, ignored on input
//
// Only `geometry` and `threshold` are required. Unknown keys are rejected.

#ifndef BEAMCOVER_CONFIG_HPP
#define BEAMCOVER_CONFIG_HPP

#include "beamcover/array_model.hpp"
#include "beamcover/coverage.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace beamcover {

struct GeometryConfig {
    ArrayKind kind = ArrayKind::ula;
    int n1 = 1;
    int n2 = 1;
    std::optional<double> d1_over_lambda;
    std::optional<double> d2_over_lambda;
    std::optional<double> spacing_m;
    std::optional<double> spacing_y_m;
    std::optional<double> carrier_ghz;
    double path_gain = 1.0;
    std::optional<int> bits;
};

struct ThresholdConfig {
    std::optional<double> gamma_db;
    std::optional<double> gamma_f;
};

struct AnalyzeConfig {
    std::vector<double> thetas_deg{0.0, 15.0, 30.0, 45.0, 60.0};
    double delta_max_deg = 20.0;
    double delta_step_deg = 0.1;
    double scan_step_deg = 1e-4;
};

struct SimulateConfig {
    std::size_t n_trials = 10000;
    std::uint64_t seed = 1;
    double noise_std_db = 0.0;
};

struct RunConfig {
    GeometryConfig geometry;
    ThresholdConfig threshold;
    AngleRange visibility_x{-60.0, 60.0};
    AngleRange visibility_y{-60.0, 60.0};
    std::optional<double> step_x_deg;
    std::optional<double> step_y_deg;
    std::optional<double> candidate_step_deg;
    AnalyzeConfig analyze;
    SimulateConfig simulate;
    std::string output_directory = "out";

    ArrayGeometry array_geometry() const;
    PhaseShifterSpec phase_spec() const;
    ThresholdSpec threshold_spec() const;
    // Defaults: 0.1 deg for a ULA, 0.5 deg per axis for a URA.
    double grid_step_x() const;
    double grid_step_y() const;

    // Checks every module precondition; throws ConfigError naming the field.
    void validate() const;

    // YAML for every setting that influences results (output directory
    // excluded), using shortest round-trip number formatting.
    std::string canonical_yaml() const;
    // FNV-1a hash of canonical_yaml().
    std::string fingerprint() const;
};

RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::string& path);

// canonical_yaml() followed by a `manifest` section (tool version,
// fingerprints, derived spacing). Loading it back yields the same config.
std::string manifest_yaml(const RunConfig& config);

} // namespace beamcover

#endif // BEAMCOVER_CONFIG_HPP
