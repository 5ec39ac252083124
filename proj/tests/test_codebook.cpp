// SPDX-License-Identifier: Apache-2.0

#include "beamcover/codebook.hpp"
#include "beamcover/codebook_io.hpp"
#include "beamcover/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace beamcover;

namespace {

const AngleRange kSixty{-60.0, 60.0};

std::size_t refined_size(const ArrayGeometry& geom, const VisibilityGrid& grid, double gamma_db) {
    return refine_codebook(geom, grid, ThresholdSpec::from_db(gamma_db)).size();
}

} // namespace

TEST_CASE("visibility grid") {
    const auto axis = sample_axis(kSixty, 0.1);
    REQUIRE(axis.size() == 1201);
    CHECK(axis.front() == -60.0);
    CHECK(axis.back() == 60.0);
    CHECK(axis[600] == 0.0);
    for (std::size_t i = 1; i < axis.size(); ++i) CHECK(std::abs(axis[i] - axis[i - 1] - 0.1) < 1e-9);

    CHECK_THROWS_AS(sample_axis({10.0, 5.0}, 0.1), DomainError);
    CHECK_THROWS_AS(sample_axis({-95.0, 0.0}, 0.1), DomainError);
    CHECK_THROWS_AS(sample_axis(kSixty, 0.0), DomainError);

    const auto plane = VisibilityGrid::plane(kSixty, {-10.0, 10.0}, 0.5, 1.0);
    CHECK(plane.two_dimensional());
    CHECK(plane.nx() == 241);
    CHECK(plane.ny() == 21);
    const auto p = plane.point(1 * 21 + 3);
    CHECK(p.theta_x_deg == doctest::Approx(-59.5));
    CHECK(p.theta_y_deg == doctest::Approx(-7.0));

    const auto span = VisibilityGrid::span_of(axis, -0.15, 0.2);
    CHECK(span.first == 599);
    CHECK(span.last == 602);
    CHECK(VisibilityGrid::span_of(axis, 61.0, 62.0).empty());
}

TEST_CASE("candidates") {
    const auto geom = ArrayGeometry::ula(4, 0.4307);
    const auto thr = ThresholdSpec::from_db(3.0);
    const auto grid = VisibilityGrid::line(kSixty, 0.1);
    const auto set = build_candidates(geom, grid, thr);
    REQUIRE(set.candidates.size() == 1201);

    for (std::size_t i = 1; i < set.candidates.size(); ++i) {
        const auto& a = set.candidates[i - 1];
        const auto& b = set.candidates[i];
        const double sa = a.pointing.theta_x_deg + a.region.x.lower_deg;
        const double sb = b.pointing.theta_x_deg + b.region.x.lower_deg;
        CHECK(sa <= sb);
    }
    const Candidate* at_zero = nullptr;
    const Candidate* at_edge = nullptr;
    const Candidate* at_neg_edge = nullptr;
    for (const auto& c : set.candidates) {
        CHECK(degradation_ula(geom, c.pointing.theta_x_deg, 0.0) == 1.0);
        if (c.pointing.theta_x_deg == 0.0) at_zero = &c;
        if (c.pointing.theta_x_deg == 60.0) at_edge = &c;
        if (c.pointing.theta_x_deg == -60.0) at_neg_edge = &c;
    }
    REQUIRE(at_zero);
    REQUIRE(at_edge);
    REQUIRE(at_neg_edge);
    // unclamped reach outward from the edge pointings
    const auto free_edge = delta_bounds_ula(geom, 60.0, thr);
    CHECK(free_edge.x.width_deg() > at_zero->region.x.width_deg());
    CHECK(-at_edge->region.x.lower_deg > at_zero->region.x.upper_deg);
    CHECK(at_neg_edge->region.x.upper_deg > at_zero->region.x.upper_deg);

    CHECK_THROWS_AS(build_candidates(geom, grid, thr, 0.2), DomainError);
    CHECK(build_candidates(geom, grid, thr, 0.05).candidates.size() == 2401);
    CHECK_THROWS_AS(build_candidates(geom, VisibilityGrid::plane(kSixty, kSixty, 1, 1), thr), InvalidGeometry);
}

TEST_CASE("1-D greedy cover") {
    const auto thr = ThresholdSpec::from_db(3.0);
    SUBCASE("one candidate covering the whole grid") {
        const auto geom = ArrayGeometry::ula(2, 0.5);
        const auto grid = VisibilityGrid::line({-1.0, 1.0}, 0.5);
        CHECK(refine_codebook(geom, grid, thr).size() == 1);
    }
    SUBCASE("uncoverable grid point is named") {
        const auto geom = ArrayGeometry::ula(8, 0.5);
        const auto grid = VisibilityGrid::line(kSixty, 0.5);
        auto set = build_candidates(geom, grid, thr);
        set.candidates.resize(3);
        try {
            greedy_cover_1d(geom, thr, set, grid);
            FAIL("expected UncoverablePoint");
        } catch (const UncoverablePoint& e) {
            CHECK(std::string(e.what()).find("deg") != std::string::npos);
        }
    }
    SUBCASE("table configuration") {
        const auto geom = ArrayGeometry::ula(4, 0.4307);
        const auto grid = VisibilityGrid::line(kSixty, 0.1);
        const auto book = refine_codebook(geom, grid, thr);
        CHECK(book.size() >= 1);
        CHECK(book.size() < grid.size());
        const auto report = verify_cover(book, grid, thr);
        CHECK(report.fraction_meeting == 1.0);
        CHECK(report.min_ratio >= thr.min_ratio() - kCoverSlack);
        // greedy order: every entry was picked for a point its predecessors left uncovered
        for (std::size_t k = 0; k < book.size(); ++k) {
            CHECK(book.entries[k].newly_covered > 0);
            if (k > 0) CHECK(book.entries[k].first_uncovered > book.entries[k - 1].first_uncovered);
        }
    }
}

TEST_CASE("cover completeness and monotonicity in gamma") {
    const auto ula = ArrayGeometry::ula(4, 0.4307);
    const auto line = VisibilityGrid::line(kSixty, 0.1);
    const auto ura = ArrayGeometry::ura(4, 4, 0.4307, 0.4307);
    const auto plane = VisibilityGrid::plane(kSixty, kSixty, 1.0, 1.0);
    std::size_t prev_ula = line.size() + 1;
    std::size_t prev_ura = plane.size() + 1;
    for (const double db : {1.0, 2.0, 3.0, 5.0}) {
        CAPTURE(db);
        const auto thr = ThresholdSpec::from_db(db);
        const auto b1 = refine_codebook(ula, line, thr);
        CHECK(verify_cover(b1, line, thr).fraction_meeting == 1.0);
        CHECK(b1.size() <= prev_ula);
        prev_ula = b1.size();

        const auto b2 = refine_codebook(ura, plane, thr);
        const auto r2 = verify_cover(b2, plane, thr);
        CHECK(r2.fraction_meeting == 1.0);
        CHECK(b2.size() <= prev_ura);
        CHECK(b2.size() < plane.size());
        prev_ura = b2.size();
        for (const auto& e : b2.entries) CHECK(e.newly_covered > 0);
    }
}

TEST_CASE("2-D greedy cover on a single-point grid") {
    const auto geom = ArrayGeometry::ura(4, 4, 0.4307, 0.4307);
    const auto grid = VisibilityGrid::plane({10.0, 10.0}, {-5.0, -5.0}, 0.5, 0.5);
    const auto book = refine_codebook(geom, grid, ThresholdSpec::from_db(3.0));
    REQUIRE(book.size() == 1);
    CHECK(book.entries[0].pointing.theta_x_deg == 10.0);
    CHECK(book.entries[0].pointing.theta_y_deg == -5.0);
}

TEST_CASE("refinement is deterministic") {
    const auto geom = ArrayGeometry::ura(4, 4, 0.4307, 0.4307);
    const auto grid = VisibilityGrid::plane(kSixty, kSixty, 1.0, 1.0);
    const auto a = refine_codebook(geom, grid, ThresholdSpec::from_db(2.0));
    const auto b = refine_codebook(geom, grid, ThresholdSpec::from_db(2.0));
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.entries[k].candidate_index == b.entries[k].candidate_index);
}

TEST_CASE("verification") {
    const auto thr = ThresholdSpec::from_db(3.0);
    const auto geom = ArrayGeometry::ula(4, 0.4307);
    const auto grid = VisibilityGrid::line(kSixty, 0.1);

    const auto empty = verify_cover(std::span<const SteeringVector>{}, geom, grid, thr);
    CHECK(empty.fraction_meeting == 0.0);
    CHECK(empty.min_ratio == 0.0);
    CHECK(empty.best_entry[0] == -1);

    const auto book = refine_codebook(geom, grid, thr);
    const auto quant = verify_cover(book, grid, thr, PhaseShifterSpec::with_bits(10));
    CHECK(quant.fraction_within_db(thr.gamma_db + 0.1) >= 0.99);

    const auto ura = ArrayGeometry::ura(4, 4, 0.4307, 0.4307);
    const auto plane = VisibilityGrid::plane(kSixty, kSixty, 1.0, 1.0);
    const auto book2 = refine_codebook(ura, plane, thr);
    const auto quant2 = verify_cover(book2, plane, thr, PhaseShifterSpec::with_bits(10));
    CHECK(quant2.fraction_within_db(thr.gamma_db + 0.1) >= 0.99);

    // a single broadside beam misses the edges
    const std::vector<SteeringVector> one{steer_toward(geom, Direction::ula(0.0))};
    const auto partial = verify_cover(one, geom, grid, thr);
    CHECK(partial.fraction_meeting > 0.0);
    CHECK(partial.fraction_meeting < 1.0);
    CHECK(partial.min_ratio < thr.min_ratio());
    // worst point sits near the first null, sin(theta) = 1 / (N d)
    const double null_deg = rad_to_deg(std::asin(1.0 / (4.0 * 0.4307)));
    CHECK(std::abs(std::abs(partial.argmin.theta_x_deg) - null_deg) < 0.1);

    const std::vector<SteeringVector> wrong{steer_toward(ura, Direction{})};
    CHECK_THROWS_AS(verify_cover(wrong, geom, grid, thr), DimensionMismatch);
}

TEST_CASE("codebook CSV round trip") {
    const auto thr = ThresholdSpec::from_db(3.0);
    for (const bool two_d : {false, true}) {
        CAPTURE(two_d);
        const auto geom = two_d ? ArrayGeometry::ura(4, 4, 0.4307, 0.4307) : ArrayGeometry::ula(4, 0.4307);
        const auto grid = two_d ? VisibilityGrid::plane(kSixty, kSixty, 2.0, 2.0) : VisibilityGrid::line(kSixty, 0.1);
        const auto book = refine_codebook(geom, grid, thr);
        for (const auto& phases : {PhaseShifterSpec::unquantized(), PhaseShifterSpec::with_bits(6)}) {
            std::stringstream buf;
            write_codebook_csv(buf, book, phases, "abc123");
            const auto file = read_codebook_csv(buf);
            CHECK(file.get("fingerprint") == "abc123");
            CHECK(file.get("geometry") == geometry_fingerprint(geom, phases));
            CHECK(file.two_dimensional == two_d);
            REQUIRE(file.entries.size() == book.size());
            const auto expected = phases.quantized() ? std::vector<SteeringVector>{} : book.vectors();
            for (std::size_t k = 0; k < book.size(); ++k) {
                const auto& got = file.entries[k];
                CHECK(got.pointing.theta_x_deg == doctest::Approx(book.entries[k].pointing.theta_x_deg));
                CHECK(got.region.x.upper_deg == doctest::Approx(book.entries[k].region.x.upper_deg));
                const auto want = phases.quantized() ? quantize_steering(book.entries[k].vector, phases)
                                                     : book.entries[k].vector;
                REQUIRE(got.vector.size() == want.size());
                for (std::size_t i = 0; i < want.size(); ++i) {
                    CHECK(std::abs(got.vector.weights[i] - want.weights[i]) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("corrupt codebook CSV reports the line") {
    const auto geom = ArrayGeometry::ula(4, 0.4307);
    const auto book = refine_codebook(geom, VisibilityGrid::line(kSixty, 0.1), ThresholdSpec::from_db(3.0));
    std::stringstream buf;
    write_codebook_csv(buf, book, PhaseShifterSpec::unquantized(), "x");
    std::string text = buf.str();
    // break the second data row (metadata 3 lines + header + first row)
    std::size_t pos = 0;
    for (int i = 0; i < 5; ++i) pos = text.find('\n', pos) + 1;
    text.insert(text.find(',', pos) + 1, "oops");
    std::istringstream in(text);
    try {
        read_codebook_csv(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
        CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    }

    std::istringstream short_row("# fingerprint: x\nentry_index,pointing_deg,l_delta_deg,u_delta_deg,phase_0\n0,1,2\n");
    CHECK_THROWS_AS(read_codebook_csv(short_row), ParseError);
}

TEST_CASE("refined sizes are reported for the default grids") {
    const auto ula = ArrayGeometry::ula(4, 0.4307);
    const auto line = VisibilityGrid::line(kSixty, 0.1);
    MESSAGE("ULA sizes: " << refined_size(ula, line, 1) << " " << refined_size(ula, line, 2) << ' '
                          << refined_size(ula, line, 3) << " " << refined_size(ula, line, 5));
}
