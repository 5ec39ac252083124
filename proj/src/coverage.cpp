// SPDX-License-Identifier: Apache-2.0

#include "beamcover/coverage.hpp"

#include "beamcover/errors.hpp"
#include "beamcover/roots.hpp"
#include "beamcover/text.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace beamcover {

ThresholdSpec ThresholdSpec::from_db(double gamma_db) {
    if (!(gamma_db > 0.0) || !std::isfinite(gamma_db)) {
        throw InvalidThreshold(fmt::format("gamma must be a positive number of dB, got {}", gamma_db));
    }
    return ThresholdSpec{gamma_db, std::pow(10.0, gamma_db / 10.0)};
}

ThresholdSpec ThresholdSpec::from_factor(double gamma_f) {
    if (!(gamma_f > 1.0) || !std::isfinite(gamma_f)) {
        throw InvalidThreshold(fmt::format("gamma_f must exceed 1, got {}", gamma_f));
    }
    return ThresholdSpec{10.0 * std::log10(gamma_f), gamma_f};
}

double phase_deviation(double d_over_lambda, double theta_deg, double delta_deg) {
    return 2.0 * kPi * d_over_lambda * (std::sin(deg_to_rad(theta_deg + delta_deg)) - std::sin(deg_to_rad(theta_deg)));
}

double dirichlet_ratio(int n, double z) {
    if (std::abs(z) < 1e-9) return 1.0;
    const double den = std::sin(0.5 * z);
    if (std::abs(den) < 1e-15) return 1.0; // grating-lobe peak, z = 2 pi k
    const double r = std::sin(0.5 * n * z) / (n * den);
    return r * r;
}

namespace {

void require_visible(double deg, const char* what) {
    if (!(std::abs(deg) <= 90.0)) {
        throw DomainError(fmt::format("{} = {} deg is outside the visible range [-90, 90]", what, text::real(deg)));
    }
}

void check_threshold(const ThresholdSpec& t) {
    if (!(t.gamma_f > 1.0) || !std::isfinite(t.gamma_f)) {
        throw InvalidThreshold(fmt::format("gamma_f must exceed 1, got {}", t.gamma_f));
    }
}

} // namespace

double degradation_ula(const ArrayGeometry& geom, double theta_deg, double delta_deg) {
    if (geom.kind != ArrayKind::ula) throw InvalidGeometry("degradation_ula requires a ULA geometry");
    require_visible(theta_deg, "theta");
    require_visible(theta_deg + delta_deg, "theta + delta");
    return dirichlet_ratio(geom.n1, phase_deviation(geom.d1_over_lambda, theta_deg, delta_deg));
}

double degradation_ura(const ArrayGeometry& geom, double theta_x_deg, double theta_y_deg, double delta_x_deg,
                       double delta_y_deg) {
    if (geom.kind != ArrayKind::ura) throw InvalidGeometry("degradation_ura requires a URA geometry");
    require_visible(theta_x_deg, "theta_x");
    require_visible(theta_y_deg, "theta_y");
    require_visible(theta_x_deg + delta_x_deg, "theta_x + delta_x");
    require_visible(theta_y_deg + delta_y_deg, "theta_y + delta_y");
    const double z1 = phase_deviation(geom.d1_over_lambda, theta_x_deg, delta_x_deg);
    const double z2 = phase_deviation(geom.d2_over_lambda, theta_y_deg, delta_y_deg);
    return dirichlet_ratio(geom.n1, z1) * dirichlet_ratio(geom.n2, z2);
}

double alpha_equation_ula(double alpha, double gamma_f) {
    // 1 - cos(a) written as 2 sin^2(a/2) to stay accurate near a = 0.
    const double s = std::sin(0.5 * alpha);
    return 2.0 * s * s - alpha * alpha / (2.0 * gamma_f);
}

double alpha_equation_ura(double alpha, double gamma_f) {
    const double sinc = (alpha == 0.0) ? 1.0 : std::sin(alpha) / alpha;
    return sinc - std::pow(gamma_f, -0.25);
}

AlphaStar alpha_star_ula(const ThresholdSpec& threshold) {
    check_threshold(threshold);
    const double gf = threshold.gamma_f;
    auto f = [gf](double a) { return alpha_equation_ula(a, gf); };

    // The function is positive just right of 0 and negative for
    // a > 2 sqrt(gamma_f), so the first sign change brackets the root.
    constexpr double step = 0.01;
    const double limit = 2.0 * std::sqrt(gf) + step;
    for (int k = 1; k * step <= limit + step; ++k) {
        const double hi = k * step;
        if (f(hi) < 0.0) {
            const double lo = (k == 1) ? step * 1e-6 : (k - 1) * step;
            const auto r = roots::bisect(f, lo, hi, 1e-10, 200);
            return AlphaStar{r.root, ArrayKind::ula, r.residual};
        }
    }
    throw InvalidThreshold(fmt::format("no positive root found for gamma_f = {}", gf));
}

AlphaStar alpha_star_ura(const ThresholdSpec& threshold) {
    check_threshold(threshold);
    const double gf = threshold.gamma_f;
    auto f = [gf](double a) { return alpha_equation_ura(a, gf); };
    const auto r = roots::bisect(f, 0.0, kPi, 1e-10, 200);
    return AlphaStar{r.root, ArrayKind::ura, r.residual};
}

double sine_halfwidth_ula(const ArrayGeometry& geom, const ThresholdSpec& threshold) {
    const double alpha = alpha_star_ula(threshold).value;
    return alpha / (2.0 * kPi * geom.d1_over_lambda * geom.n1);
}

double sine_halfwidth_ura(int n, double d_over_lambda, const ThresholdSpec& threshold) {
    const double alpha = alpha_star_ura(threshold).value;
    return alpha / (kPi * d_over_lambda * n);
}

DeviationInterval deviation_bounds(double theta_deg, double sine_halfwidth, const AngleRange& visibility) {
    if (!visibility.contains(theta_deg)) {
        throw DomainError(fmt::format("pointing angle {} deg outside visibility [{}, {}]", text::real(theta_deg),
                                      text::real(visibility.min_deg), text::real(visibility.max_deg)));
    }
    const double s = std::sin(deg_to_rad(theta_deg));
    const double lo_arg = s - sine_halfwidth;
    const double hi_arg = s + sine_halfwidth;
    double lo = lo_arg <= -1.0 ? -90.0 : rad_to_deg(std::asin(lo_arg));
    double hi = hi_arg >= 1.0 ? 90.0 : rad_to_deg(std::asin(hi_arg));

    DeviationInterval out;
    if (lo <= visibility.min_deg) {
        lo = visibility.min_deg;
        out.lower_clamped = true;
    }
    if (hi >= visibility.max_deg) {
        hi = visibility.max_deg;
        out.upper_clamped = true;
    }
    out.lower_deg = std::min(0.0, lo - theta_deg);
    out.upper_deg = std::max(0.0, hi - theta_deg);
    return out;
}

CoverageRegion delta_bounds_ula(const ArrayGeometry& geom, double theta_deg, const ThresholdSpec& threshold,
                                const AngleRange& visibility) {
    if (geom.kind != ArrayKind::ula) throw InvalidGeometry("delta_bounds_ula requires a ULA geometry");
    return CoverageRegion{deviation_bounds(theta_deg, sine_halfwidth_ula(geom, threshold), visibility), std::nullopt};
}

CoverageRegion delta_bounds_ura(const ArrayGeometry& geom, double theta_x_deg, double theta_y_deg,
                                const ThresholdSpec& threshold, const AngleRange& visibility_x,
                                const AngleRange& visibility_y) {
    if (geom.kind != ArrayKind::ura) throw InvalidGeometry("delta_bounds_ura requires a URA geometry");
    const double alpha = alpha_star_ura(threshold).value;
    const double hw1 = alpha / (kPi * geom.d1_over_lambda * geom.n1);
    const double hw2 = alpha / (kPi * geom.d2_over_lambda * geom.n2);
    return CoverageRegion{deviation_bounds(theta_x_deg, hw1, visibility_x),
                          deviation_bounds(theta_y_deg, hw2, visibility_y)};
}

CoverageRegion delta_bounds(const ArrayGeometry& geom, const Direction& pointing, const ThresholdSpec& threshold,
                            const AngleRange& visibility_x, const AngleRange& visibility_y) {
    if (geom.kind == ArrayKind::ula) return delta_bounds_ula(geom, pointing.theta_x_deg, threshold, visibility_x);
    return delta_bounds_ura(geom, pointing.theta_x_deg, pointing.theta_y_deg, threshold, visibility_x, visibility_y);
}

namespace {

// Walks outward from 0 in direction `sign` until the ratio drops below the
// threshold or the visibility edge is reached. Returns the last admissible
// deviation and whether the edge stopped the scan.
template <class Ratio>
std::pair<double, bool> scan_edge(Ratio&& ratio, double theta_deg, double sign, double step, double min_ratio,
                                  const AngleRange& visibility) {
    const double edge = sign > 0 ? visibility.max_deg - theta_deg : theta_deg - visibility.min_deg;
    double last = 0.0;
    for (long long k = 1;; ++k) {
        const double delta = static_cast<double>(k) * step;
        if (delta > edge) return {sign * edge, true};
        if (ratio(sign * delta) < min_ratio) return {sign * last, false};
        last = delta;
    }
}

DeviationInterval scan_axis(auto&& ratio, double theta_deg, double step, double min_ratio,
                            const AngleRange& visibility) {
    if (!visibility.contains(theta_deg)) {
        throw DomainError(fmt::format("pointing angle {} deg outside visibility", text::real(theta_deg)));
    }
    DeviationInterval out;
    std::tie(out.lower_deg, out.lower_clamped) = scan_edge(ratio, theta_deg, -1.0, step, min_ratio, visibility);
    std::tie(out.upper_deg, out.upper_clamped) = scan_edge(ratio, theta_deg, +1.0, step, min_ratio, visibility);
    return out;
}

} // namespace

CoverageRegion numeric_coverage(const ArrayGeometry& geom, const Direction& pointing,
                                const ThresholdSpec& threshold, double scan_step_deg,
                                const AngleRange& visibility_x, const AngleRange& visibility_y) {
    if (!(scan_step_deg > 0.0)) throw DomainError("scan step must be positive");
    check_threshold(threshold);
    const auto beam = steer_toward(geom, pointing);
    const double min_ratio = threshold.min_ratio();

    // Exact gain ratio through the array model, not the closed form.
    auto ratio_at = [&](const Direction& arrival) { return gain_ratio(geom, arrival, beam); };

    CoverageRegion region;
    region.x = scan_axis(
        [&](double dx) { return ratio_at(Direction::xy(pointing.theta_x_deg + dx, pointing.theta_y_deg)); },
        pointing.theta_x_deg, scan_step_deg, min_ratio, visibility_x);
    if (geom.kind == ArrayKind::ura) {
        region.y = scan_axis(
            [&](double dy) { return ratio_at(Direction::xy(pointing.theta_x_deg, pointing.theta_y_deg + dy)); },
            pointing.theta_y_deg, scan_step_deg, min_ratio, visibility_y);
    }
    return region;
}

} // namespace beamcover
