// SPDX-License-Identifier: Apache-2.0
//
// Angular coverage of a steering vector under a bounded gain loss.
//
// A steering vector pointed at theta keeps the gain ratio D >= 1/gamma_f for
// arrival angles theta + Delta with Delta inside a coverage interval. For a
// ULA the interval follows from the phase deviation
//
//     z = 2 pi (d/lambda) (sin(theta + Delta) - sin(theta)),  |z| <= alpha*/N
//
// where alpha* is the smallest positive root of 1 - cos(a) - a^2 / (2 gamma_f).
// For a URA each axis is handled separately with |z_i| <= 2 alpha*/N_i and
// alpha* the root of sin(a)/a = gamma_f^(-1/4) in (0, pi).
//
// numeric_coverage() scans the exact gain ratio and is the reference the
// closed forms are checked against.

#ifndef BEAMCOVER_COVERAGE_HPP
#define BEAMCOVER_COVERAGE_HPP

#include "beamcover/array_model.hpp"

#include <optional>

namespace beamcover {

struct ThresholdSpec {
    double gamma_db = 3.0;
    double gamma_f = 1.9952623149688795; // 10^(gamma_db / 10)

    static ThresholdSpec from_db(double gamma_db);
    // Linear degradation factor given directly; gamma_db is derived.
    static ThresholdSpec from_factor(double gamma_f);

    double min_ratio() const noexcept { return 1.0 / gamma_f; }

    friend bool operator==(const ThresholdSpec&, const ThresholdSpec&) = default;
};

struct AlphaStar {
    double value = 0.0;
    ArrayKind kind = ArrayKind::ula;
    double residual = 0.0;
};

// Closed interval of angles in degrees.
struct AngleRange {
    double min_deg = -90.0;
    double max_deg = 90.0;

    static AngleRange physical() { return {-90.0, 90.0}; }
    bool contains(double deg) const noexcept { return deg >= min_deg && deg <= max_deg; }

    friend bool operator==(const AngleRange&, const AngleRange&) = default;
};

// Deviation bounds [lower, upper] around a pointing angle, lower <= 0 <= upper.
struct DeviationInterval {
    double lower_deg = 0.0;
    double upper_deg = 0.0;
    bool lower_clamped = false;
    bool upper_clamped = false;

    double width_deg() const noexcept { return upper_deg - lower_deg; }
};

// ULA: `x` only. URA: `x` for theta_x, `y` for theta_y.
struct CoverageRegion {
    DeviationInterval x;
    std::optional<DeviationInterval> y;
};

// 2 pi (d/lambda) (sin(theta + delta) - sin(theta)), angles in degrees.
double phase_deviation(double d_over_lambda, double theta_deg, double delta_deg);

// |sum_{n<N} e^{j n z}|^2 / N^2 written as (sin(N z/2) / (N sin(z/2)))^2, with
// the removable singularities (z a multiple of 2 pi) returning 1.
double dirichlet_ratio(int n, double z);

double degradation_ula(const ArrayGeometry& geom, double theta_deg, double delta_deg);
double degradation_ura(const ArrayGeometry& geom, double theta_x_deg, double theta_y_deg, double delta_x_deg,
                       double delta_y_deg);

// Left-hand side of the ULA root equation, 1 - cos(a) - a^2 / (2 gamma_f).
double alpha_equation_ula(double alpha, double gamma_f);
// sin(a)/a - gamma_f^(-1/4)
double alpha_equation_ura(double alpha, double gamma_f);

AlphaStar alpha_star_ula(const ThresholdSpec& threshold);
AlphaStar alpha_star_ura(const ThresholdSpec& threshold);

// Half-width of the admissible band for sin(theta + Delta) - sin(theta).
double sine_halfwidth_ula(const ArrayGeometry& geom, const ThresholdSpec& threshold);
double sine_halfwidth_ura(int n, double d_over_lambda, const ThresholdSpec& threshold);

// arcsin(sin(theta) -/+ halfwidth) - theta with clamping to `visibility`.
DeviationInterval deviation_bounds(double theta_deg, double sine_halfwidth, const AngleRange& visibility);

CoverageRegion delta_bounds_ula(const ArrayGeometry& geom, double theta_deg, const ThresholdSpec& threshold,
                                const AngleRange& visibility = AngleRange::physical());

CoverageRegion delta_bounds_ura(const ArrayGeometry& geom, double theta_x_deg, double theta_y_deg,
                                const ThresholdSpec& threshold,
                                const AngleRange& visibility_x = AngleRange::physical(),
                                const AngleRange& visibility_y = AngleRange::physical());

CoverageRegion delta_bounds(const ArrayGeometry& geom, const Direction& pointing, const ThresholdSpec& threshold,
                            const AngleRange& visibility_x = AngleRange::physical(),
                            const AngleRange& visibility_y = AngleRange::physical());

// Brute-force region: scans Delta outward from 0 in steps of scan_step_deg and
// keeps the largest contiguous run with D >= 1/gamma_f. For a URA each axis is
// scanned with the other deviation held at zero.
CoverageRegion numeric_coverage(const ArrayGeometry& geom, const Direction& pointing,
                                const ThresholdSpec& threshold, double scan_step_deg = 1e-4,
                                const AngleRange& visibility_x = AngleRange::physical(),
                                const AngleRange& visibility_y = AngleRange::physical());

} // namespace beamcover

#endif // BEAMCOVER_COVERAGE_HPP
