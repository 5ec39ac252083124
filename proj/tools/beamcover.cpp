// SPDX-License-Identifier: Apache-2.0
//
// beamcover: coverage analysis, codebook refinement and beam-sweep simulation.
//
//   beamcover analyze  --config run.yaml [--out DIR]
//   beamcover refine   --config run.yaml [--out DIR] [--quantize-bits N]
//   beamcover simulate --config run.yaml --codebook DIR/codebook.csv [--out DIR] [--quantize-bits N]

#include "beamcover/config.hpp"
#include "beamcover/errors.hpp"
#include "beamcover/run.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

beamcover::RunConfig load(const std::string& path, const std::optional<int>& quantize_bits) {
    auto config = beamcover::load_config(path);
    if (quantize_bits) {
        config.geometry.bits = *quantize_bits;
        config.validate();
    }
    return config;
}

int report(const beamcover::CommandResult& result) {
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
    if (!result.summary.empty()) std::cout << result.summary << '\n';
    if (result.exit_code == beamcover::exit_code::verification) {
        std::cerr << "error: verification found grid points below the gain threshold\n";
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steering-vector coverage analysis and beam codebook refinement"};
    app.set_version_flag("--version", std::string(BEAMCOVER_VERSION));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string codebook_path;
    std::optional<int> quantize_bits;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Run configuration (YAML)")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides output.directory)");
    };

    auto* analyze = app.add_subcommand("analyze", "Analytic vs numeric coverage and degradation curves");
    add_common(analyze);

    auto* refine = app.add_subcommand("refine", "Greedy codebook refinement with exhaustive verification");
    add_common(refine);
    refine->add_option("--quantize-bits", quantize_bits, "Phase-shifter bits (overrides geometry.bits)")
        ->check(CLI::Range(1, 30));

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo beam sweep over a refined codebook");
    add_common(simulate);
    simulate->add_option("--codebook", codebook_path, "codebook.csv written by refine")->required();
    simulate->add_option("--quantize-bits", quantize_bits, "Phase-shifter bits (overrides geometry.bits)")
        ->check(CLI::Range(1, 30));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : beamcover::exit_code::config;
    }

    return beamcover::run_with_exit_codes(
        [&]() {
            const auto config = load(config_path, quantize_bits);
            const std::string dir = out_dir.empty() ? config.output_directory : out_dir;
            if (analyze->parsed()) return report(beamcover::cmd_analyze(config, dir));
            if (refine->parsed()) return report(beamcover::cmd_refine(config, dir));
            return report(beamcover::cmd_simulate(config, codebook_path, dir));
        },
        std::cerr);
}
