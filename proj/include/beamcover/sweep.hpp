// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo beam sweep: draw arrival directions uniformly over the
// visibility region, pick the codebook entry with the highest (optionally
// noisy) measured gain and record how far its true gain falls short of the
// perfectly steered maximum N * beta^2.

#ifndef BEAMCOVER_SWEEP_HPP
#define BEAMCOVER_SWEEP_HPP

#include "beamcover/array_model.hpp"
#include "beamcover/coverage.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace beamcover {

struct SweepTrial {
    std::size_t trial_index = 0;
    Direction arrival;
    std::size_t best_entry = 0;
    double achievable_gain = 0.0;
    double max_gain = 0.0;
    double gap_db = 0.0; // 10 log10(max / achievable)
};

struct CdfPoint {
    double value = 0.0;
    double fraction = 0.0;

    friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

struct SweepOptions {
    std::size_t n_trials = 10000;
    std::uint64_t seed = 1;
    std::optional<double> noise_std_db;
    AngleRange visibility_x{-60.0, 60.0};
    AngleRange visibility_y{-60.0, 60.0};
};

struct SweepReport {
    std::vector<SweepTrial> trials;
    double gamma_db = 0.0;
    double fraction_within_gamma = 0.0;
    std::vector<CdfPoint> cdf;
    std::uint64_t rng_seed = 0;
    double noise_std_db = 0.0;

    double mean_gap_db() const;
    double median_gap_db() const;
    double max_gap_db() const;
};

// Right-continuous empirical CDF: one point per distinct value, carrying the
// share of samples <= that value. Throws DomainError on empty input.
std::vector<CdfPoint> empirical_cdf(std::span<const double> samples);

// Trial k draws from its own generator seeded by (seed, k), so results do not
// depend on evaluation order.
SweepReport run_sweep(std::span<const SteeringVector> codebook, const ArrayGeometry& geom,
                      const ThresholdSpec& threshold, const SweepOptions& options);

} // namespace beamcover

#endif // BEAMCOVER_SWEEP_HPP
