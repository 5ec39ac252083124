// SPDX-License-Identifier: Apache-2.0
//
// The analyze / refine / simulate pipelines behind the command-line tool.
// Each writes its files into an output directory; every file carries the run
// fingerprint of the config that produced it.

#ifndef BEAMCOVER_RUN_HPP
#define BEAMCOVER_RUN_HPP

#include "beamcover/codebook.hpp"
#include "beamcover/config.hpp"
#include "beamcover/sweep.hpp"

#include <exception>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace beamcover {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int config = 2;
inline constexpr int infeasible = 3;
inline constexpr int verification = 4;
inline constexpr int fingerprint = 5;
} // namespace exit_code

struct CommandResult {
    int exit_code = exit_code::ok;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
    std::string summary;
};

// coverage.csv, degradation.csv, manifest.yaml
CommandResult cmd_analyze(const RunConfig& config, const std::filesystem::path& out_dir);

// codebook.csv, verification.txt, manifest.yaml. Exit code 4 when the
// unquantized codebook misses any grid point.
CommandResult cmd_refine(const RunConfig& config, const std::filesystem::path& out_dir);

// trials.csv, cdf.csv, summary.txt, manifest.yaml. Throws FingerprintMismatch
// when the codebook was built for another geometry.
CommandResult cmd_simulate(const RunConfig& config, const std::filesystem::path& codebook_csv,
                           const std::filesystem::path& out_dir);

// Runs `body`, mapping library exceptions onto exit codes and writing the
// diagnostic to `err`.
int run_with_exit_codes(const std::function<int()>& body, std::ostream& err);

int exit_code_for(const std::exception& e) noexcept;

VisibilityGrid grid_from_config(const RunConfig& config);

} // namespace beamcover

#endif // BEAMCOVER_RUN_HPP
