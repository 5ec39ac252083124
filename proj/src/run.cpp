// SPDX-License-Identifier: Apache-2.0

#include "beamcover/run.hpp"

#include "beamcover/codebook_io.hpp"
#include "beamcover/errors.hpp"
#include "beamcover/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

namespace beamcover {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    return out;
}

fs::path prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    return dir;
}

void write_manifest(const RunConfig& config, const fs::path& dir, CommandResult& result) {
    const auto path = dir / "manifest.yaml";
    auto out = open_output(path);
    out << manifest_yaml(config);
    result.files.push_back(path);
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

void write_key_values(const fs::path& path, const KeyValues& items, CommandResult& result) {
    auto out = open_output(path);
    for (const auto& [k, v] : items) out << k << ": " << v << '\n';
    result.files.push_back(path);
}

double degradation_along_x(const ArrayGeometry& geom, double theta, double delta) {
    return geom.kind == ArrayKind::ula ? degradation_ula(geom, theta, delta)
                                       : degradation_ura(geom, theta, 0.0, delta, 0.0);
}

} // namespace

VisibilityGrid grid_from_config(const RunConfig& config) {
    if (config.geometry.kind == ArrayKind::ula) return VisibilityGrid::line(config.visibility_x, config.grid_step_x());
    return VisibilityGrid::plane(config.visibility_x, config.visibility_y, config.grid_step_x(), config.grid_step_y());
}

CommandResult cmd_analyze(const RunConfig& config, const fs::path& out_dir) {
    config.validate();
    const auto geom = config.array_geometry();
    const auto threshold = config.threshold_spec();
    const auto fingerprint = config.fingerprint();
    for (const double t : config.analyze.thetas_deg) {
        if (!config.visibility_x.contains(t)) {
            throw ConfigError(fmt::format("analyze.thetas_deg: {} lies outside the visibility range", text::real(t)));
        }
    }
    prepare_dir(out_dir);
    CommandResult result;

    {
        const auto path = out_dir / "coverage.csv";
        auto out = open_output(path);
        write_metadata(out, {{"fingerprint", fingerprint}});
        out << "theta_deg,l_delta_analytic,u_delta_analytic,l_delta_numeric,u_delta_numeric,degradation_at_edges\n";
        for (const double theta : config.analyze.thetas_deg) {
            const Direction pointing = Direction::xy(theta, 0.0);
            const auto analytic = delta_bounds(geom, pointing, threshold, config.visibility_x, config.visibility_y).x;
            const auto numeric = numeric_coverage(geom, pointing, threshold, config.analyze.scan_step_deg,
                                                  config.visibility_x, config.visibility_y)
                                     .x;
            const double at_edges = std::min(degradation_along_x(geom, theta, analytic.lower_deg),
                                             degradation_along_x(geom, theta, analytic.upper_deg));
            out << text::real(theta) << ',' << text::real(analytic.lower_deg) << ',' << text::real(analytic.upper_deg)
                << ',' << text::real(numeric.lower_deg) << ',' << text::real(numeric.upper_deg) << ','
                << text::real(at_edges) << '\n';
        }
        result.files.push_back(path);
    }

    {
        const auto path = out_dir / "degradation.csv";
        auto out = open_output(path);
        write_metadata(out, {{"fingerprint", fingerprint}});
        out << "theta_deg,delta_deg,degradation\n";
        const auto& an = config.analyze;
        const auto steps = static_cast<long long>(std::floor(an.delta_max_deg / an.delta_step_deg + 1e-9));
        for (const double theta : an.thetas_deg) {
            for (long long k = -steps; k <= steps; ++k) {
                const double delta = static_cast<double>(k) * an.delta_step_deg;
                if (std::abs(theta + delta) > 90.0) continue;
                out << text::real(theta) << ',' << text::real(delta) << ','
                    << text::real(degradation_along_x(geom, theta, delta)) << '\n';
            }
        }
        result.files.push_back(path);
    }

    write_manifest(config, out_dir, result);
    result.summary = fmt::format("analyzed {} pointing angles", config.analyze.thetas_deg.size());
    return result;
}

CommandResult cmd_refine(const RunConfig& config, const fs::path& out_dir) {
    config.validate();
    const auto geom = config.array_geometry();
    const auto threshold = config.threshold_spec();
    const auto phases = config.phase_spec();
    const auto fingerprint = config.fingerprint();
    const auto grid = grid_from_config(config);

    CommandResult result;
    result.warnings = grating_lobe_warnings(
        geom, std::max(std::abs(config.visibility_x.min_deg), std::abs(config.visibility_x.max_deg)),
        std::max(std::abs(config.visibility_y.min_deg), std::abs(config.visibility_y.max_deg)));

    const auto candidates = build_candidates(geom, grid, threshold, config.candidate_step_deg);
    const auto book = geom.kind == ArrayKind::ula ? greedy_cover_1d(geom, threshold, candidates, grid)
                                                  : greedy_cover_2d(geom, threshold, candidates, grid);
    const auto exact = verify_cover(book, grid, threshold);

    prepare_dir(out_dir);
    {
        const auto path = out_dir / "codebook.csv";
        auto out = open_output(path);
        write_codebook_csv(out, book, phases, fingerprint);
        result.files.push_back(path);
    }

    const bool complete = exact.fraction_meeting >= 1.0;
    KeyValues report{{"fingerprint", fingerprint},
                     {"geometry", geometry_fingerprint(geom, phases)},
                     {"gamma_db", text::real(threshold.gamma_db)},
                     {"gamma_f", text::real(threshold.gamma_f)},
                     {"grid_points", std::to_string(grid.size())},
                     {"initial_candidates", std::to_string(candidates.candidates.size())},
                     {"codebook_size", std::to_string(book.size())},
                     {"required_min_ratio", text::real(threshold.min_ratio())},
                     {"min_ratio", text::real(exact.min_ratio)},
                     {"min_ratio_db", text::real(10.0 * std::log10(exact.min_ratio))},
                     {"argmin_theta_x_deg", text::real(exact.argmin.theta_x_deg)}};
    if (geom.kind == ArrayKind::ura) report.emplace_back("argmin_theta_y_deg", text::real(exact.argmin.theta_y_deg));
    report.emplace_back("fraction_meeting", text::real(exact.fraction_meeting));
    if (phases.quantized()) {
        const auto quant = verify_cover(book, grid, threshold, phases);
        report.emplace_back("quantized_bits", std::to_string(*phases.bits));
        report.emplace_back("quantized_min_ratio", text::real(quant.min_ratio));
        report.emplace_back("quantized_fraction_meeting", text::real(quant.fraction_meeting));
        report.emplace_back("quantized_fraction_within_gamma_plus_0.1db",
                            text::real(quant.fraction_within_db(threshold.gamma_db + 0.1)));
    }
    report.emplace_back("status", complete ? "pass" : "fail");
    write_key_values(out_dir / "verification.txt", report, result);
    write_manifest(config, out_dir, result);

    result.summary = fmt::format("codebook size {} from {} candidates; min ratio {} ({} dB); coverage {}",
                                 book.size(), candidates.candidates.size(), text::real(exact.min_ratio),
                                 text::real(10.0 * std::log10(exact.min_ratio)), text::real(exact.fraction_meeting));
    result.exit_code = complete ? exit_code::ok : exit_code::verification;
    return result;
}

CommandResult cmd_simulate(const RunConfig& config, const fs::path& codebook_csv, const fs::path& out_dir) {
    config.validate();
    const auto geom = config.array_geometry();
    const auto threshold = config.threshold_spec();
    const auto fingerprint = config.fingerprint();

    std::ifstream in(codebook_csv);
    if (!in) throw Error(fmt::format("cannot open codebook '{}'", codebook_csv.string()));
    const auto file = read_codebook_csv(in);

    const auto expected = geometry_fingerprint(geom, config.phase_spec());
    const auto found = file.get("geometry");
    if (found != expected) {
        throw FingerprintMismatch(
            fmt::format("codebook geometry fingerprint '{}' does not match config geometry fingerprint '{}'", found,
                        expected));
    }

    SweepOptions options;
    options.n_trials = config.simulate.n_trials;
    options.seed = config.simulate.seed;
    if (config.simulate.noise_std_db > 0.0) options.noise_std_db = config.simulate.noise_std_db;
    options.visibility_x = config.visibility_x;
    options.visibility_y = config.visibility_y;
    const auto vectors = file.vectors();
    const auto report = run_sweep(vectors, geom, threshold, options);

    prepare_dir(out_dir);
    CommandResult result;
    const bool ura = geom.kind == ArrayKind::ura;
    {
        const auto path = out_dir / "trials.csv";
        auto out = open_output(path);
        write_metadata(out, {{"fingerprint", fingerprint}});
        out << (ura ? "trial_index,theta_x_deg,theta_y_deg" : "trial_index,theta_deg")
            << ",best_entry_index,achievable_gain,max_gain,gap_db\n";
        for (const auto& t : report.trials) {
            out << t.trial_index << ',' << text::real(t.arrival.theta_x_deg);
            if (ura) out << ',' << text::real(t.arrival.theta_y_deg);
            out << ',' << t.best_entry << ',' << text::real(t.achievable_gain) << ',' << text::real(t.max_gain) << ','
                << text::real(t.gap_db) << '\n';
        }
        result.files.push_back(path);
    }
    {
        const auto path = out_dir / "cdf.csv";
        auto out = open_output(path);
        write_metadata(out, {{"fingerprint", fingerprint}});
        out << "gap_db,fraction\n";
        for (const auto& p : report.cdf) out << text::real(p.value) << ',' << text::real(p.fraction) << '\n';
        result.files.push_back(path);
    }
    write_key_values(out_dir / "summary.txt",
                     {{"fingerprint", fingerprint},
                      {"codebook_fingerprint", file.get("fingerprint")},
                      {"codebook_size", std::to_string(vectors.size())},
                      {"n_trials", std::to_string(report.trials.size())},
                      {"seed", std::to_string(report.rng_seed)},
                      {"noise_std_db", text::real(report.noise_std_db)},
                      {"gamma_db", text::real(report.gamma_db)},
                      {"fraction_within_gamma", text::real(report.fraction_within_gamma)},
                      {"mean_gap_db", text::real(report.mean_gap_db())},
                      {"median_gap_db", text::real(report.median_gap_db())},
                      {"max_gap_db", text::real(report.max_gap_db())}},
                     result);
    write_manifest(config, out_dir, result);
    result.summary = fmt::format("{} trials, fraction within {} dB: {}, max gap {} dB", report.trials.size(),
                                 text::real(report.gamma_db), text::real(report.fraction_within_gamma),
                                 text::real(report.max_gap_db()));
    return result;
}

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const ConfigError*>(&e)) return exit_code::config;
    if (dynamic_cast<const UncoverablePoint*>(&e)) return exit_code::infeasible;
    if (dynamic_cast<const FingerprintMismatch*>(&e)) return exit_code::fingerprint;
    return exit_code::failure;
}

int run_with_exit_codes(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

} // namespace beamcover
