// SPDX-License-Identifier: Apache-2.0

#include "beamcover/cover_select.hpp"

#include <algorithm>

namespace beamcover {

CoverSelection greedy_interval_cover(std::span<const IndexSpan> candidates, std::size_t grid_size) {
    CoverSelection result;
    std::vector<bool> covered(grid_size, false);
    std::size_t next = 0;

    while (true) {
        while (next < grid_size && covered[next]) ++next;
        if (next == grid_size) break;

        std::optional<std::size_t> best;
        std::size_t best_last = 0;
        for (std::size_t m = 0; m < candidates.size(); ++m) {
            const auto& c = candidates[m];
            if (!c.contains(next)) continue;
            if (!best || c.last > best_last) {
                best = m;
                best_last = c.last;
            }
        }
        if (!best) {
            result.uncoverable = next;
            break;
        }

        const auto& chosen = candidates[*best];
        std::size_t fresh = 0;
        for (std::size_t k = chosen.first; k <= std::min(chosen.last, grid_size - 1); ++k) {
            if (!covered[k]) {
                covered[k] = true;
                ++fresh;
            }
        }
        result.steps.push_back({*best, next, fresh});
    }
    return result;
}

namespace {

// Inclusive prefix sums of the uncovered mask over an nx-by-ny grid.
class UncoveredCounts {
public:
    UncoveredCounts(std::size_t nx, std::size_t ny) : nx_(nx), ny_(ny), sums_((nx + 1) * (ny + 1), 0) {}

    void rebuild(const std::vector<bool>& covered) {
        for (std::size_t i = 0; i < nx_; ++i) {
            std::size_t row = 0;
            for (std::size_t j = 0; j < ny_; ++j) {
                row += covered[i * ny_ + j] ? 0 : 1;
                at(i + 1, j + 1) = at(i, j + 1) + row;
            }
        }
    }

    std::size_t count(const IndexRect& r) const {
        if (r.empty()) return 0;
        const std::size_t x1 = std::min(r.x.last, nx_ - 1) + 1;
        const std::size_t y1 = std::min(r.y.last, ny_ - 1) + 1;
        const std::size_t x0 = r.x.first;
        const std::size_t y0 = r.y.first;
        if (x0 >= x1 || y0 >= y1) return 0;
        return at(x1, y1) + at(x0, y0) - at(x0, y1) - at(x1, y0);
    }

private:
    std::size_t& at(std::size_t i, std::size_t j) { return sums_[i * (ny_ + 1) + j]; }
    std::size_t at(std::size_t i, std::size_t j) const { return sums_[i * (ny_ + 1) + j]; }

    std::size_t nx_;
    std::size_t ny_;
    std::vector<std::size_t> sums_;
};

} // namespace

CoverSelection greedy_rect_cover(std::span<const IndexRect> candidates, std::size_t nx, std::size_t ny) {
    CoverSelection result;
    const std::size_t total = nx * ny;
    if (total == 0) return result;

    std::vector<bool> covered(total, false);
    UncoveredCounts counts(nx, ny);
    std::size_t next = 0;

    while (true) {
        while (next < total && covered[next]) ++next;
        if (next == total) break;
        const std::size_t i = next / ny;
        const std::size_t j = next % ny;

        counts.rebuild(covered);
        std::optional<std::size_t> best;
        std::size_t best_count = 0;
        for (std::size_t m = 0; m < candidates.size(); ++m) {
            if (!candidates[m].contains(i, j)) continue;
            const std::size_t c = counts.count(candidates[m]);
            if (!best || c > best_count) {
                best = m;
                best_count = c;
            }
        }
        if (!best) {
            result.uncoverable = next;
            break;
        }

        const auto& r = candidates[*best];
        for (std::size_t a = r.x.first; a <= std::min(r.x.last, nx - 1); ++a) {
            for (std::size_t b = r.y.first; b <= std::min(r.y.last, ny - 1); ++b) covered[a * ny + b] = true;
        }
        result.steps.push_back({*best, next, best_count});
    }
    return result;
}

} // namespace beamcover
