// SPDX-License-Identifier: Apache-2.0
//
// Codebook refinement: discretize the visibility range, attach the analytic
// coverage region to every candidate direction, run the contiguous greedy
// cover, and check the result against the exact gain.

#ifndef BEAMCOVER_CODEBOOK_HPP
#define BEAMCOVER_CODEBOOK_HPP

#include "beamcover/array_model.hpp"
#include "beamcover/cover_select.hpp"
#include "beamcover/coverage.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace beamcover {

// Uniformly spaced angles over one range (1-D) or the Cartesian product of
// two ranges (2-D, flat index i * ny + j with i along theta_x).
class VisibilityGrid {
public:
    static VisibilityGrid line(const AngleRange& range, double step_deg);
    static VisibilityGrid plane(const AngleRange& range_x, const AngleRange& range_y, double step_x_deg,
                                double step_y_deg);

    bool two_dimensional() const noexcept { return two_d_; }
    std::size_t nx() const noexcept { return axis_x_.size(); }
    std::size_t ny() const noexcept { return two_d_ ? axis_y_.size() : 1; }
    std::size_t size() const noexcept { return nx() * ny(); }

    const std::vector<double>& axis_x() const noexcept { return axis_x_; }
    const std::vector<double>& axis_y() const noexcept { return axis_y_; }
    const AngleRange& range_x() const noexcept { return range_x_; }
    const AngleRange& range_y() const noexcept { return range_y_; }
    double step_x_deg() const noexcept { return step_x_; }
    double step_y_deg() const noexcept { return step_y_; }

    Direction point(std::size_t flat) const;

    // Indices of axis samples inside [lo, hi] (inclusive, 1e-9 deg slack).
    static IndexSpan span_of(const std::vector<double>& axis, double lo_deg, double hi_deg);

private:
    std::vector<double> axis_x_;
    std::vector<double> axis_y_;
    AngleRange range_x_;
    AngleRange range_y_;
    double step_x_ = 0.0;
    double step_y_ = 0.0;
    bool two_d_ = false;
};

// Evenly spaced samples from range.min_deg to range.max_deg inclusive.
std::vector<double> sample_axis(const AngleRange& range, double step_deg);

struct Candidate {
    Direction pointing;
    CoverageRegion region;
};

struct CandidateSet {
    std::vector<Candidate> candidates;
};

// One candidate per grid direction, or per `candidate_step_deg` sample when
// given (must not exceed the grid step). 1-D candidates are ordered by the
// start of their coverage, then by pointing angle; 2-D candidates keep the
// lexicographic (theta_x, theta_y) order.
CandidateSet build_candidates(const ArrayGeometry& geom, const VisibilityGrid& grid, const ThresholdSpec& threshold,
                              std::optional<double> candidate_step_deg = std::nullopt);

struct CodebookEntry {
    SteeringVector vector;   // unquantized
    Direction pointing;
    CoverageRegion region;
    std::size_t candidate_index = 0;
    std::size_t first_uncovered = 0; // flat grid index this entry was picked for
    std::size_t newly_covered = 0;
};

struct RefinedCodebook {
    ArrayGeometry geometry;
    ThresholdSpec threshold;
    AngleRange visibility_x;
    AngleRange visibility_y;
    double step_x_deg = 0.0;
    double step_y_deg = 0.0;
    std::vector<CodebookEntry> entries;

    std::size_t size() const noexcept { return entries.size(); }
    std::vector<SteeringVector> vectors() const;
};

// Covered grid indices of each candidate.
std::vector<IndexSpan> candidate_spans(const CandidateSet& set, const VisibilityGrid& grid);
std::vector<IndexRect> candidate_rects(const CandidateSet& set, const VisibilityGrid& grid);

// Throw UncoverablePoint naming the first grid angle no candidate covers.
RefinedCodebook greedy_cover_1d(const ArrayGeometry& geom, const ThresholdSpec& threshold,
                                const CandidateSet& candidates, const VisibilityGrid& grid);
RefinedCodebook greedy_cover_2d(const ArrayGeometry& geom, const ThresholdSpec& threshold,
                                const CandidateSet& candidates, const VisibilityGrid& grid);

// build_candidates followed by the cover matching the geometry.
RefinedCodebook refine_codebook(const ArrayGeometry& geom, const VisibilityGrid& grid, const ThresholdSpec& threshold);

struct CoverReport {
    std::size_t points = 0;
    double min_ratio = 0.0;
    Direction argmin;
    double fraction_meeting = 0.0;          // share of points with ratio >= 1/gamma_f - 1e-9
    std::vector<double> best_ratio;         // per grid point
    std::vector<std::ptrdiff_t> best_entry; // per grid point, -1 for an empty codebook

    // Share of grid points whose best ratio is at least `ratio`.
    double fraction_at_least(double ratio) const;
    // Share of points whose loss stays within `loss_db`.
    double fraction_within_db(double loss_db) const;
};

inline constexpr double kCoverSlack = 1e-9;

// For every grid point, the best exact gain ratio over the codebook (entries
// quantized first when `phases` is quantized).
CoverReport verify_cover(std::span<const SteeringVector> entries, const ArrayGeometry& geom,
                         const VisibilityGrid& grid, const ThresholdSpec& threshold,
                         const PhaseShifterSpec& phases = PhaseShifterSpec::unquantized());

CoverReport verify_cover(const RefinedCodebook& codebook, const VisibilityGrid& grid, const ThresholdSpec& threshold,
                         const PhaseShifterSpec& phases = PhaseShifterSpec::unquantized());

} // namespace beamcover

#endif // BEAMCOVER_CODEBOOK_HPP
