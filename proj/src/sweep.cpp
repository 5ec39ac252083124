// SPDX-License-Identifier: Apache-2.0

#include "beamcover/sweep.hpp"

#include "beamcover/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

namespace beamcover {

std::vector<CdfPoint> empirical_cdf(std::span<const double> samples) {
    if (samples.empty()) throw DomainError("empirical_cdf needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    std::vector<CdfPoint> cdf;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k + 1 < sorted.size() && sorted[k + 1] == sorted[k]) continue;
        cdf.push_back({sorted[k], static_cast<double>(k + 1) / n});
    }
    return cdf;
}

double SweepReport::mean_gap_db() const {
    if (trials.empty()) return 0.0;
    const double sum = std::accumulate(trials.begin(), trials.end(), 0.0,
                                       [](double acc, const SweepTrial& t) { return acc + t.gap_db; });
    return sum / static_cast<double>(trials.size());
}

double SweepReport::median_gap_db() const {
    if (trials.empty()) return 0.0;
    std::vector<double> gaps;
    gaps.reserve(trials.size());
    for (const auto& t : trials) gaps.push_back(t.gap_db);
    std::sort(gaps.begin(), gaps.end());
    const std::size_t mid = gaps.size() / 2;
    return gaps.size() % 2 == 1 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
}

double SweepReport::max_gap_db() const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& t : trials) worst = std::max(worst, t.gap_db);
    return trials.empty() ? 0.0 : worst;
}

namespace {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

double draw_angle(std::mt19937_64& rng, const AngleRange& range) {
    if (range.max_deg <= range.min_deg) return range.min_deg;
    return std::uniform_real_distribution<double>(range.min_deg, range.max_deg)(rng);
}

} // namespace

SweepReport run_sweep(std::span<const SteeringVector> codebook, const ArrayGeometry& geom,
                      const ThresholdSpec& threshold, const SweepOptions& options) {
    if (codebook.empty()) throw DomainError("cannot sweep an empty codebook");
    if (options.n_trials < 1) throw DomainError("n_trials must be at least 1");
    if (options.noise_std_db && !(*options.noise_std_db >= 0.0)) throw DomainError("noise_std_db must be >= 0");
    for (const auto& entry : codebook) {
        if (entry.size() != geom.size()) {
            throw DimensionMismatch(fmt::format("codebook entry has {} weights, geometry has {} elements",
                                                entry.size(), geom.size()));
        }
    }

    SweepReport report;
    report.gamma_db = threshold.gamma_db;
    report.rng_seed = options.seed;
    report.noise_std_db = options.noise_std_db.value_or(0.0);
    report.trials.reserve(options.n_trials);

    const double max_gain = geom.max_gain();
    const bool noisy = options.noise_std_db && *options.noise_std_db > 0.0;
    std::vector<double> gains(codebook.size());

    for (std::size_t k = 0; k < options.n_trials; ++k) {
        auto rng = trial_engine(options.seed, k);
        SweepTrial trial;
        trial.trial_index = k;
        trial.arrival.theta_x_deg = draw_angle(rng, options.visibility_x);
        if (geom.kind == ArrayKind::ura) trial.arrival.theta_y_deg = draw_angle(rng, options.visibility_y);

        const auto a = manifold(geom, trial.arrival);
        for (std::size_t m = 0; m < codebook.size(); ++m) gains[m] = array_gain(a, codebook[m]);

        std::size_t best = 0;
        if (noisy) {
            std::normal_distribution<double> noise(0.0, *options.noise_std_db);
            double best_measured = -std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < codebook.size(); ++m) {
                const double measured = 10.0 * std::log10(gains[m]) + noise(rng);
                if (measured > best_measured) {
                    best_measured = measured;
                    best = m;
                }
            }
        } else {
            best = static_cast<std::size_t>(std::max_element(gains.begin(), gains.end()) - gains.begin());
        }

        trial.best_entry = best;
        trial.achievable_gain = gains[best];
        trial.max_gain = max_gain;
        trial.gap_db = 10.0 * std::log10(max_gain / trial.achievable_gain);
        report.trials.push_back(trial);
    }

    std::vector<double> gaps;
    gaps.reserve(report.trials.size());
    for (const auto& t : report.trials) gaps.push_back(t.gap_db);
    const auto within = std::count_if(gaps.begin(), gaps.end(), [&](double g) { return g <= threshold.gamma_db; });
    report.fraction_within_gamma = static_cast<double>(within) / static_cast<double>(gaps.size());
    report.cdf = empirical_cdf(gaps);
    return report;
}

} // namespace beamcover
