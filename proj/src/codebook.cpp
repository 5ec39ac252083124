// SPDX-License-Identifier: Apache-2.0

#include "beamcover/codebook.hpp"

#include "beamcover/errors.hpp"
#include "beamcover/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace beamcover {

namespace {
constexpr double kAngleSlack = 1e-9; // degrees
} // namespace

std::vector<double> sample_axis(const AngleRange& range, double step_deg) {
    if (!(step_deg > 0.0) || !std::isfinite(step_deg)) {
        throw DomainError(fmt::format("grid step must be positive, got {}", step_deg));
    }
    if (!(range.max_deg >= range.min_deg)) {
        throw DomainError(fmt::format("empty visibility range [{}, {}]", text::real(range.min_deg),
                                      text::real(range.max_deg)));
    }
    if (range.min_deg < -90.0 || range.max_deg > 90.0) {
        throw DomainError("visibility range must lie within [-90, 90]");
    }
    const double count = std::floor((range.max_deg - range.min_deg) / step_deg + 1e-9);
    const auto n = static_cast<std::size_t>(count) + 1;
    std::vector<double> axis(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Snap to 1e-9 deg so that e.g. -60 + 600 * 0.1 lands on exactly 0.
        axis[k] = std::round((range.min_deg + static_cast<double>(k) * step_deg) * 1e9) / 1e9;
    }
    return axis;
}

VisibilityGrid VisibilityGrid::line(const AngleRange& range, double step_deg) {
    VisibilityGrid g;
    g.axis_x_ = sample_axis(range, step_deg);
    g.range_x_ = range;
    g.range_y_ = AngleRange{0.0, 0.0};
    g.step_x_ = step_deg;
    g.step_y_ = step_deg;
    g.two_d_ = false;
    return g;
}

VisibilityGrid VisibilityGrid::plane(const AngleRange& range_x, const AngleRange& range_y, double step_x_deg,
                                     double step_y_deg) {
    VisibilityGrid g;
    g.axis_x_ = sample_axis(range_x, step_x_deg);
    g.axis_y_ = sample_axis(range_y, step_y_deg);
    g.range_x_ = range_x;
    g.range_y_ = range_y;
    g.step_x_ = step_x_deg;
    g.step_y_ = step_y_deg;
    g.two_d_ = true;
    return g;
}

Direction VisibilityGrid::point(std::size_t flat) const {
    if (!two_d_) return Direction::ula(axis_x_.at(flat));
    return Direction::xy(axis_x_.at(flat / ny()), axis_y_.at(flat % ny()));
}

IndexSpan VisibilityGrid::span_of(const std::vector<double>& axis, double lo_deg, double hi_deg) {
    const auto first = std::lower_bound(axis.begin(), axis.end(), lo_deg - kAngleSlack);
    const auto past = std::upper_bound(axis.begin(), axis.end(), hi_deg + kAngleSlack);
    if (first >= past) return IndexSpan{};
    return IndexSpan{static_cast<std::size_t>(first - axis.begin()), static_cast<std::size_t>(past - axis.begin()) - 1};
}

std::vector<SteeringVector> RefinedCodebook::vectors() const {
    std::vector<SteeringVector> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.vector);
    return out;
}

namespace {

void check_kind_matches(const ArrayGeometry& geom, const VisibilityGrid& grid) {
    if ((geom.kind == ArrayKind::ura) != grid.two_dimensional()) {
        throw InvalidGeometry(fmt::format("{} geometry needs a {} visibility grid", to_string(geom.kind),
                                          geom.kind == ArrayKind::ura ? "2-D" : "1-D"));
    }
}

std::vector<double> candidate_axis(const std::vector<double>& grid_axis, const AngleRange& range, double grid_step,
                                   std::optional<double> candidate_step) {
    if (!candidate_step) return grid_axis;
    if (*candidate_step > grid_step + 1e-12) {
        throw DomainError(fmt::format("candidate step {} exceeds grid step {}", text::real(*candidate_step),
                                      text::real(grid_step)));
    }
    return sample_axis(range, *candidate_step);
}

double coverage_start(const Candidate& c) { return c.pointing.theta_x_deg + c.region.x.lower_deg; }

} // namespace

CandidateSet build_candidates(const ArrayGeometry& geom, const VisibilityGrid& grid, const ThresholdSpec& threshold,
                              std::optional<double> candidate_step_deg) {
    geom.validate();
    check_kind_matches(geom, grid);
    CandidateSet set;

    const auto xs = candidate_axis(grid.axis_x(), grid.range_x(), grid.step_x_deg(), candidate_step_deg);
    if (geom.kind == ArrayKind::ula) {
        const double hw = sine_halfwidth_ula(geom, threshold);
        set.candidates.reserve(xs.size());
        for (const double theta : xs) {
            set.candidates.push_back({Direction::ula(theta), {deviation_bounds(theta, hw, grid.range_x()), std::nullopt}});
        }
        std::stable_sort(set.candidates.begin(), set.candidates.end(), [](const Candidate& a, const Candidate& b) {
            const double sa = coverage_start(a);
            const double sb = coverage_start(b);
            if (sa != sb) return sa < sb;
            return a.pointing.theta_x_deg < b.pointing.theta_x_deg;
        });
        return set;
    }

    const auto ys = candidate_axis(grid.axis_y(), grid.range_y(), grid.step_y_deg(), candidate_step_deg);
    // The region is separable, so each axis is solved once.
    const double hw1 = sine_halfwidth_ura(geom.n1, geom.d1_over_lambda, threshold);
    const double hw2 = sine_halfwidth_ura(geom.n2, geom.d2_over_lambda, threshold);
    std::vector<DeviationInterval> ix;
    std::vector<DeviationInterval> iy;
    for (const double t : xs) ix.push_back(deviation_bounds(t, hw1, grid.range_x()));
    for (const double t : ys) iy.push_back(deviation_bounds(t, hw2, grid.range_y()));
    set.candidates.reserve(xs.size() * ys.size());
    for (std::size_t a = 0; a < xs.size(); ++a) {
        for (std::size_t b = 0; b < ys.size(); ++b) {
            set.candidates.push_back({Direction::xy(xs[a], ys[b]), {ix[a], iy[b]}});
        }
    }
    return set;
}

std::vector<IndexSpan> candidate_spans(const CandidateSet& set, const VisibilityGrid& grid) {
    std::vector<IndexSpan> spans;
    spans.reserve(set.candidates.size());
    for (const auto& c : set.candidates) {
        const double t = c.pointing.theta_x_deg;
        spans.push_back(VisibilityGrid::span_of(grid.axis_x(), t + c.region.x.lower_deg, t + c.region.x.upper_deg));
    }
    return spans;
}

std::vector<IndexRect> candidate_rects(const CandidateSet& set, const VisibilityGrid& grid) {
    std::vector<IndexRect> rects;
    rects.reserve(set.candidates.size());
    for (const auto& c : set.candidates) {
        if (!c.region.y) throw InvalidGeometry("2-D cover needs candidates with a y interval");
        const double tx = c.pointing.theta_x_deg;
        const double ty = c.pointing.theta_y_deg;
        rects.push_back({VisibilityGrid::span_of(grid.axis_x(), tx + c.region.x.lower_deg, tx + c.region.x.upper_deg),
                         VisibilityGrid::span_of(grid.axis_y(), ty + c.region.y->lower_deg, ty + c.region.y->upper_deg)});
    }
    return rects;
}

namespace {

RefinedCodebook assemble(const ArrayGeometry& geom, const ThresholdSpec& threshold, const CandidateSet& candidates,
                         const VisibilityGrid& grid, const CoverSelection& selection) {
    if (selection.uncoverable) {
        const auto p = grid.point(*selection.uncoverable);
        if (grid.two_dimensional()) {
            throw UncoverablePoint(fmt::format("grid point (theta_x={}, theta_y={}) deg is not covered by any candidate",
                                               text::real(p.theta_x_deg), text::real(p.theta_y_deg)));
        }
        throw UncoverablePoint(
            fmt::format("grid angle {} deg is not covered by any candidate", text::real(p.theta_x_deg)));
    }
    RefinedCodebook book;
    book.geometry = geom;
    book.threshold = threshold;
    book.visibility_x = grid.range_x();
    book.visibility_y = grid.range_y();
    book.step_x_deg = grid.step_x_deg();
    book.step_y_deg = grid.step_y_deg();
    book.entries.reserve(selection.steps.size());
    for (const auto& step : selection.steps) {
        const auto& c = candidates.candidates[step.candidate];
        book.entries.push_back(
            {steer_toward(geom, c.pointing), c.pointing, c.region, step.candidate, step.first_uncovered, step.newly_covered});
    }
    return book;
}

} // namespace

RefinedCodebook greedy_cover_1d(const ArrayGeometry& geom, const ThresholdSpec& threshold,
                                const CandidateSet& candidates, const VisibilityGrid& grid) {
    check_kind_matches(geom, grid);
    const auto spans = candidate_spans(candidates, grid);
    return assemble(geom, threshold, candidates, grid, greedy_interval_cover(spans, grid.size()));
}

RefinedCodebook greedy_cover_2d(const ArrayGeometry& geom, const ThresholdSpec& threshold,
                                const CandidateSet& candidates, const VisibilityGrid& grid) {
    check_kind_matches(geom, grid);
    const auto rects = candidate_rects(candidates, grid);
    return assemble(geom, threshold, candidates, grid, greedy_rect_cover(rects, grid.nx(), grid.ny()));
}

RefinedCodebook refine_codebook(const ArrayGeometry& geom, const VisibilityGrid& grid, const ThresholdSpec& threshold) {
    const auto candidates = build_candidates(geom, grid, threshold);
    return geom.kind == ArrayKind::ula ? greedy_cover_1d(geom, threshold, candidates, grid)
                                       : greedy_cover_2d(geom, threshold, candidates, grid);
}

double CoverReport::fraction_at_least(double ratio) const {
    if (best_ratio.empty()) return 0.0;
    const auto hits = std::count_if(best_ratio.begin(), best_ratio.end(), [ratio](double r) { return r >= ratio; });
    return static_cast<double>(hits) / static_cast<double>(best_ratio.size());
}

double CoverReport::fraction_within_db(double loss_db) const {
    return fraction_at_least(std::pow(10.0, -loss_db / 10.0));
}

CoverReport verify_cover(std::span<const SteeringVector> entries, const ArrayGeometry& geom,
                         const VisibilityGrid& grid, const ThresholdSpec& threshold, const PhaseShifterSpec& phases) {
    check_kind_matches(geom, grid);
    std::vector<SteeringVector> beams;
    beams.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.size() != geom.size()) throw DimensionMismatch("codebook entry length does not match the geometry");
        beams.push_back(quantize_steering(e, phases));
    }

    CoverReport report;
    report.points = grid.size();
    report.best_ratio.assign(grid.size(), 0.0);
    report.best_entry.assign(grid.size(), -1);
    const double max_gain = geom.max_gain();

    for (std::size_t p = 0; p < grid.size(); ++p) {
        const auto a = manifold(geom, grid.point(p));
        for (std::size_t k = 0; k < beams.size(); ++k) {
            const double r = array_gain(a, beams[k]) / max_gain;
            if (r > report.best_ratio[p] || report.best_entry[p] < 0) {
                report.best_ratio[p] = r;
                report.best_entry[p] = static_cast<std::ptrdiff_t>(k);
            }
        }
    }

    const auto worst = std::min_element(report.best_ratio.begin(), report.best_ratio.end());
    if (worst != report.best_ratio.end()) {
        report.min_ratio = *worst;
        report.argmin = grid.point(static_cast<std::size_t>(worst - report.best_ratio.begin()));
    }
    report.fraction_meeting = beams.empty() ? 0.0 : report.fraction_at_least(threshold.min_ratio() - kCoverSlack);
    return report;
}

CoverReport verify_cover(const RefinedCodebook& codebook, const VisibilityGrid& grid, const ThresholdSpec& threshold,
                         const PhaseShifterSpec& phases) {
    const auto vectors = codebook.vectors();
    return verify_cover(vectors, codebook.geometry, grid, threshold, phases);
}

} // namespace beamcover
