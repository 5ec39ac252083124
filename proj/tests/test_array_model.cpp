// SPDX-License-Identifier: Apache-2.0

#include "beamcover/array_model.hpp"
#include "beamcover/errors.hpp"
#include "beamcover/steering_io.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace beamcover;

namespace {

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

SteeringVector random_unit_modulus(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    SteeringVector v;
    for (std::size_t i = 0; i < n; ++i) v.weights.push_back(std::polar(1.0 / std::sqrt(double(n)), phase(rng)));
    return v;
}

} // namespace

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(ArrayGeometry::ula(0, 0.5), InvalidGeometry);
    CHECK_THROWS_AS(ArrayGeometry::ula(4, 0.0), InvalidGeometry);
    CHECK_THROWS_AS(ArrayGeometry::ula(4, 0.5, -1.0), InvalidGeometry);
    CHECK_THROWS_AS(ArrayGeometry::ura(4, 0, 0.5, 0.5), InvalidGeometry);
    ArrayGeometry bad{ArrayKind::ula, 4, 2, 0.5, 0.5, 1.0};
    CHECK_THROWS_AS(bad.validate(), InvalidGeometry);

    const auto g = ArrayGeometry::ura(4, 4, 0.4307, 0.4307);
    CHECK(g.size() == 16);
    CHECK(g.max_gain() == doctest::Approx(16.0));
}

TEST_CASE("spacing conversion uses the speed of light") {
    // 5.15 mm at 25.1 GHz: lambda = c / f.
    const double expected = 0.00515 / (299792458.0 / 25.1e9);
    CHECK(ArrayGeometry::spacing_ratio(0.00515, 25.1) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(ArrayGeometry::spacing_ratio(0.00515, 25.1) == doctest::Approx(0.431182).epsilon(1e-6));
    CHECK_THROWS_AS(ArrayGeometry::spacing_ratio(-1.0, 25.1), InvalidGeometry);
}

TEST_CASE("grating-lobe spacing limit") {
    CHECK(grating_lobe_free(0.5, 90.0));
    CHECK(grating_lobe_free(0.4307, 60.0));
    CHECK_FALSE(grating_lobe_free(0.6, 60.0)); // limit 1/(1+0.866) = 0.536
    const auto warnings = grating_lobe_warnings(ArrayGeometry::ura(4, 4, 0.6, 0.5), 60.0, 60.0);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("d1") != std::string::npos);
}

TEST_CASE("manifold_ula") {
    SUBCASE("broadside is all ones") {
        const auto a = manifold_ula(ArrayGeometry::ula(4, 0.5, 2.0), 0.0);
        CHECK(max_abs_diff(a, ComplexVector(4, Complex(2.0, 0.0))) < 1e-15);
    }
    SUBCASE("endfire half-wavelength alternates") {
        const auto a = manifold_ula(ArrayGeometry::ula(2, 0.5), 90.0);
        CHECK(max_abs_diff(a, {Complex(1, 0), Complex(-1, 0)}) < 1e-15);
    }
    SUBCASE("N=8 at 30 deg advances by pi/2 per element") {
        const auto a = manifold_ula(ArrayGeometry::ula(8, 0.5), 30.0);
        ComplexVector expected;
        for (int n = 0; n < 8; ++n) expected.push_back(std::exp(Complex(0.0, n * kPi / 2.0)));
        CHECK(max_abs_diff(a, expected) < 1e-14);
    }
    CHECK_THROWS_AS(manifold_ula(ArrayGeometry::ura(2, 2, 0.5, 0.5), 0.0), InvalidGeometry);
    CHECK_THROWS_AS(manifold_ula(ArrayGeometry::ula(2, 0.5), 91.0), DomainError);
}

TEST_CASE("manifold_ura ordering and az-el consistency") {
    const auto g = ArrayGeometry::ura(2, 2, 0.5, 0.5);
    CHECK(max_abs_diff(manifold_ura(g, Direction::xy(0, 0)), ComplexVector(4, Complex(1, 0))) < 1e-15);

    // n = m1 * n2 + m2 with m1 along theta_x: v1 = [1, -1], v2 = [1, 1].
    CHECK(max_abs_diff(manifold_ura(g, Direction::xy(90, 0)),
                       {Complex(1, 0), Complex(1, 0), Complex(-1, 0), Complex(-1, 0)}) < 1e-15);
    CHECK(max_abs_diff(manifold_ura(g, Direction::xy(0, 90)),
                       {Complex(1, 0), Complex(-1, 0), Complex(1, 0), Complex(-1, 0)}) < 1e-15);

    const auto g4 = ArrayGeometry::ura(4, 4, 0.4307, 0.4307);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> az(-180.0, 180.0);
    std::uniform_real_distribution<double> el(0.0, 90.0);
    for (int trial = 0; trial < 500; ++trial) {
        const AzEl p{az(rng), el(rng)};
        const auto via_xy = manifold_ura(g4, azel_to_xy(p));
        const auto direct = manifold_ura_azel(g4, p);
        CHECK(max_abs_diff(via_xy, direct) < 1e-12);
    }
    CHECK_THROWS_AS(manifold_ura(ArrayGeometry::ula(4, 0.5), Direction{}), InvalidGeometry);
}

TEST_CASE("azimuth-elevation mapping") {
    auto close = [](double a, double b) { return std::abs(a - b) < 1e-12; };
    const auto zero = azel_to_xy({0.0, 0.0});
    CHECK(close(zero.theta_x_deg, 0.0));
    CHECK(close(zero.theta_y_deg, 0.0));

    const auto d = azel_to_xy({90.0, 30.0});
    CHECK(close(d.theta_x_deg, 30.0));
    CHECK(close(d.theta_y_deg, 0.0));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-90.0, 90.0);
    int tested = 0;
    while (tested < 2000) {
        const Direction p = Direction::xy(u(rng), u(rng));
        const double sx = std::sin(deg_to_rad(p.theta_x_deg));
        const double sy = std::sin(deg_to_rad(p.theta_y_deg));
        if (sx * sx + sy * sy > 1.0 - 1e-9) {
            CHECK_THROWS_AS(xy_to_azel(Direction::xy(60, 60)), DomainError);
            continue;
        }
        const auto ae = xy_to_azel(p);
        // sine identities
        CHECK(std::abs(sy - std::sin(deg_to_rad(ae.theta2_deg)) * std::cos(deg_to_rad(ae.theta1_deg))) < 1e-12);
        CHECK(std::abs(sx - std::sin(deg_to_rad(ae.theta2_deg)) * std::sin(deg_to_rad(ae.theta1_deg))) < 1e-12);
        const auto back = azel_to_xy(ae);
        CHECK(std::abs(back.theta_x_deg - p.theta_x_deg) < 1e-9);
        CHECK(std::abs(back.theta_y_deg - p.theta_y_deg) < 1e-9);
        ++tested;
    }
    CHECK_THROWS_AS(azel_to_xy({0.0, 95.0}), DomainError);
    CHECK_THROWS_AS(xy_to_azel(Direction::xy(100.0, 0.0)), DomainError);
}

TEST_CASE("optimal steering reaches N beta^2") {
    const double beta = 0.7;
    const ComplexVector flat(4, Complex(beta, 0.0));
    const auto w = optimal_steering(flat);
    for (const auto& x : w.weights) CHECK(std::abs(x - Complex(0.5, 0.0)) < 1e-15);
    CHECK(array_gain(flat, w) == doctest::Approx(4.0 * beta * beta).epsilon(1e-14));

    const auto g = ArrayGeometry::ula(8, 0.5);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-90.0, 90.0);
    for (int i = 0; i < 100; ++i) {
        const auto a = manifold_ula(g, u(rng));
        CHECK(std::abs(array_gain(a, optimal_steering(a)) - 8.0) < 1e-12);
    }

    // global phase rotation of the manifold leaves the optimal gain unchanged
    ComplexVector arbitrary;
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    for (int i = 0; i < 6; ++i) arbitrary.push_back(std::polar(1.0, ph(rng)));
    auto rotated = arbitrary;
    for (auto& x : rotated) x *= std::polar(1.0, 1.234);
    CHECK(array_gain(rotated, optimal_steering(rotated)) ==
          doctest::Approx(array_gain(arbitrary, optimal_steering(arbitrary))).epsilon(1e-14));
    const auto w0 = optimal_steering(arbitrary);
    CHECK(array_gain(rotated, w0) == doctest::Approx(array_gain(arbitrary, w0)).epsilon(1e-13));

    CHECK_THROWS_AS(optimal_steering(ComplexVector{Complex(1, 0), Complex(0, 0)}), DegenerateManifold);
    CHECK_THROWS_AS(optimal_steering(ComplexVector{}), DegenerateManifold);
}

TEST_CASE("array gain") {
    const auto g = ArrayGeometry::ula(2, 0.5);
    const auto w = steer_toward(g, Direction::ula(90.0));
    CHECK(array_gain(manifold_ula(g, 0.0), w) < 1e-30);
    CHECK_THROWS_AS(array_gain(ComplexVector(3), ComplexVector(4)), DimensionMismatch);

    // 3 dB edge for N=8, d=lambda/2 at broadside.
    const auto g8 = ArrayGeometry::ula(8, 0.5);
    const double ratio = gain_ratio(g8, Direction::ula(6.3578), steer_toward(g8, Direction::ula(0.0)));
    // the closed-form edge sits just inside the true 3 dB contour
    const double x = 0.5 * kPi * std::sin(deg_to_rad(6.3578));
    const double oracle = std::pow(std::sin(8.0 * x) / (8.0 * std::sin(x)), 2.0);
    CHECK(ratio == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(ratio >= std::pow(10.0, -0.3));
    CHECK(std::abs(ratio - std::pow(10.0, -0.3)) < 5e-3);
}

TEST_CASE("gain ceiling and unit modulus (property)") {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> n_dist(1, 16);
    std::uniform_real_distribution<double> angle(-90.0, 90.0);
    std::uniform_real_distribution<double> spacing(0.1, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = ArrayGeometry::ula(n_dist(rng), spacing(rng));
        const auto a = manifold_ula(g, angle(rng));
        const auto best = optimal_steering(a);
        for (const auto& x : best.weights) CHECK(std::abs(std::abs(x) - 1.0 / std::sqrt(double(g.size()))) < 1e-12);
        const auto random = random_unit_modulus(g.size(), rng);
        CHECK(array_gain(a, random) <= g.max_gain() + 1e-9);
        CHECK(std::abs(array_gain(a, best) - g.max_gain()) < 1e-9);
    }
}

TEST_CASE("mismatch loss depends only on the phase deviation") {
    const auto g = ArrayGeometry::ula(8, 0.5);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> theta(-50.0, 50.0);
    std::uniform_real_distribution<double> delta(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double t1 = theta(rng);
        const double d1 = delta(rng);
        const double s = std::sin(deg_to_rad(t1 + d1)) - std::sin(deg_to_rad(t1));
        const double t2 = theta(rng);
        const double arg = std::sin(deg_to_rad(t2)) + s;
        if (std::abs(arg) >= 1.0) continue;
        const double d2 = rad_to_deg(std::asin(arg)) - t2;
        const double r1 = gain_ratio(g, Direction::ula(t1 + d1), steer_toward(g, Direction::ula(t1)));
        const double r2 = gain_ratio(g, Direction::ula(t2 + d2), steer_toward(g, Direction::ula(t2)));
        CHECK(std::abs(r1 - r2) < 1e-12);
    }
}

TEST_CASE("URA gain factorizes into the two axes") {
    const auto g = ArrayGeometry::ura(4, 3, 0.45, 0.4);
    const auto gx = ArrayGeometry::ula(4, 0.45);
    const auto gy = ArrayGeometry::ula(3, 0.4);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-60.0, 60.0);
    for (int i = 0; i < 200; ++i) {
        const Direction p = Direction::xy(u(rng), u(rng));
        const Direction q = Direction::xy(u(rng), u(rng));
        const double full = gain_ratio(g, q, steer_toward(g, p));
        const double rows = gain_ratio(gx, Direction::ula(q.theta_x_deg), steer_toward(gx, Direction::ula(p.theta_x_deg)));
        const double cols = gain_ratio(gy, Direction::ula(q.theta_y_deg), steer_toward(gy, Direction::ula(p.theta_y_deg)));
        CHECK(std::abs(full - rows * cols) < 1e-12);
    }
}

TEST_CASE("phase quantization") {
    const auto one_bit = PhaseShifterSpec::with_bits(1);
    CHECK(one_bit.levels() == 2);
    CHECK(quantize_phase_index(0.3 * kPi, one_bit) == 0);
    CHECK(quantize_phase_index(0.7 * kPi, one_bit) == 1);
    CHECK(quantize_phase_index(-0.3 * kPi, one_bit) == 0);

    // exact tie goes to the lower level
    const auto two_bits = PhaseShifterSpec::with_bits(2);
    CHECK(quantize_phase_index(kPi / 4.0, two_bits) == 0);
    CHECK(quantize_phase_index(3.0 * kPi / 4.0, two_bits) == 1);

    CHECK_THROWS_AS(PhaseShifterSpec::with_bits(0), InvalidGeometry);
    CHECK_THROWS_AS(PhaseShifterSpec::unquantized().levels(), InvalidGeometry);

    const auto ten = PhaseShifterSpec::with_bits(10);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    for (int i = 0; i < 1000; ++i) {
        SteeringVector v;
        const double p = ph(rng);
        v.weights.push_back(std::polar(0.25, p));
        const auto q = quantize_steering(v, ten);
        REQUIRE(q.quantized_bits == 10);
        CHECK(std::abs(std::abs(q.weights[0]) - 0.25) < 1e-15);
        const double err = std::abs(std::arg(q.weights[0] * std::conj(v.weights[0])));
        CHECK(err <= kPi / 1024.0 + 1e-12);
    }

    const auto g = ArrayGeometry::ura(4, 4, 0.4307, 0.4307);
    std::uniform_real_distribution<double> u(-60.0, 60.0);
    for (int i = 0; i < 100; ++i) {
        const Direction p = Direction::xy(u(rng), u(rng));
        const auto w = steer_toward(g, p);
        const auto q = quantize_steering(w, ten);
        for (const auto& x : q.weights) CHECK(std::abs(std::abs(x) - 0.25) < 1e-12);
        const double loss_db = 10.0 * std::log10(gain_ratio(g, p, w) / gain_ratio(g, p, q));
        CHECK(loss_db < 0.01);
    }
    const auto same = quantize_steering(steer_toward(g, Direction{}), PhaseShifterSpec::unquantized());
    CHECK_FALSE(same.quantized_bits.has_value());
}

TEST_CASE("geometry fingerprint") {
    CHECK(geometry_fingerprint(ArrayGeometry::ula(8, 0.5), PhaseShifterSpec::unquantized()) ==
          "kind=ULA;n1=8;n2=1;d1_over_lambda=0.5;d2_over_lambda=0.5;bits=inf");
    CHECK(geometry_fingerprint(ArrayGeometry::ura(4, 4, 0.4307, 0.4307), PhaseShifterSpec::with_bits(10)) ==
          "kind=URA;n1=4;n2=4;d1_over_lambda=0.4307;d2_over_lambda=0.4307;bits=10");
}

TEST_CASE("steering vector CSV round trip") {
    const auto g = ArrayGeometry::ura(4, 4, 0.4307, 0.4307);
    const auto spec = PhaseShifterSpec::with_bits(10);
    const auto w = quantize_steering(steer_toward(g, Direction::xy(12.5, -33.0)), spec);
    std::stringstream buf;
    write_steering_csv(buf, w, g, spec);
    const auto file = read_steering_csv(buf);
    CHECK(file.geometry_fingerprint == geometry_fingerprint(g, spec));
    REQUIRE(file.vector.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(file.vector.weights[i] - w.weights[i]) < 1e-9);

    std::istringstream bad("# geometry: x\nindex,phase_radians,re,im\n0,0,1,zz\n");
    try {
        read_steering_csv(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}
