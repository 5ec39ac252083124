// SPDX-License-Identifier: Apache-2.0
//
// Greedy set cover over grids where every candidate covers a contiguous block
// of grid indices (1-D) or an axis-aligned block (2-D).

#ifndef BEAMCOVER_COVER_SELECT_HPP
#define BEAMCOVER_COVER_SELECT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace beamcover {

// Inclusive index range [first, last]. An empty span (covers nothing) has
// first > last.
struct IndexSpan {
    std::size_t first = 1;
    std::size_t last = 0;

    bool empty() const noexcept { return first > last; }
    bool contains(std::size_t i) const noexcept { return first <= i && i <= last; }
    std::size_t count() const noexcept { return empty() ? 0 : last - first + 1; }

    friend bool operator==(const IndexSpan&, const IndexSpan&) = default;
};

struct IndexRect {
    IndexSpan x;
    IndexSpan y;

    bool empty() const noexcept { return x.empty() || y.empty(); }
    bool contains(std::size_t i, std::size_t j) const noexcept { return x.contains(i) && y.contains(j); }
};

struct SelectionStep {
    std::size_t candidate = 0;      // index into the candidate list
    std::size_t first_uncovered = 0; // flat grid index that triggered the step
    std::size_t newly_covered = 0;
};

struct CoverSelection {
    std::vector<SelectionStep> steps;
    // Flat index of the first grid point no candidate covers; the greedy
    // stops there.
    std::optional<std::size_t> uncoverable;

    bool feasible() const noexcept { return !uncoverable.has_value(); }
};

// Contiguous greedy cover: repeatedly take the smallest uncovered index i and
// pick, among candidates containing i, the one reaching furthest right
// (ties: smaller candidate index).
CoverSelection greedy_interval_cover(std::span<const IndexSpan> candidates, std::size_t grid_size);

// Two-dimensional greedy cover over an nx-by-ny grid (flat index i * ny + j).
// Each step takes the uncovered pair with the smallest i, then smallest j, and
// among rectangles containing it picks the one covering the most uncovered
// points (ties: smaller candidate index).
CoverSelection greedy_rect_cover(std::span<const IndexRect> candidates, std::size_t nx, std::size_t ny);

} // namespace beamcover

#endif // BEAMCOVER_COVER_SELECT_HPP
