// SPDX-License-Identifier: Apache-2.0

#include "beamcover/array_model.hpp"

#include "beamcover/errors.hpp"
#include "beamcover/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

namespace beamcover {

std::string to_string(ArrayKind kind) { return kind == ArrayKind::ula ? "ULA" : "URA"; }

ArrayKind parse_array_kind(const std::string& text) {
    std::string upper = text;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    if (upper == "ULA") return ArrayKind::ula;
    if (upper == "URA") return ArrayKind::ura;
    throw InvalidGeometry("unknown array kind '" + text + "' (expected ULA or URA)");
}

ArrayGeometry ArrayGeometry::ula(int n, double d_over_lambda, double path_gain) {
    ArrayGeometry g{ArrayKind::ula, n, 1, d_over_lambda, d_over_lambda, path_gain};
    g.validate();
    return g;
}

ArrayGeometry ArrayGeometry::ura(int n1, int n2, double d1_over_lambda, double d2_over_lambda,
                                 double path_gain) {
    ArrayGeometry g{ArrayKind::ura, n1, n2, d1_over_lambda, d2_over_lambda, path_gain};
    g.validate();
    return g;
}

double ArrayGeometry::spacing_ratio(double spacing_m, double carrier_ghz) {
    if (!(spacing_m > 0.0) || !(carrier_ghz > 0.0)) {
        throw InvalidGeometry("spacing and carrier frequency must be positive");
    }
    const double wavelength = kSpeedOfLight / (carrier_ghz * 1e9);
    return spacing_m / wavelength;
}

void ArrayGeometry::validate() const {
    if (n1 < 1 || n2 < 1) {
        throw InvalidGeometry(fmt::format("element counts must be >= 1 (n1={}, n2={})", n1, n2));
    }
    if (kind == ArrayKind::ula && n2 != 1) {
        throw InvalidGeometry(fmt::format("a ULA has n2 = 1, got n2={}", n2));
    }
    if (!(d1_over_lambda > 0.0) || !std::isfinite(d1_over_lambda)) {
        throw InvalidGeometry("d1_over_lambda must be positive");
    }
    if (kind == ArrayKind::ura && (!(d2_over_lambda > 0.0) || !std::isfinite(d2_over_lambda))) {
        throw InvalidGeometry("d2_over_lambda must be positive");
    }
    if (!(path_gain > 0.0) || !std::isfinite(path_gain)) {
        throw InvalidGeometry("path_gain must be positive");
    }
}

bool grating_lobe_free(double d_over_lambda, double max_steer_deg) noexcept {
    return d_over_lambda <= 1.0 / (1.0 + std::abs(std::sin(deg_to_rad(max_steer_deg)))) + 1e-12;
}

std::vector<std::string> grating_lobe_warnings(const ArrayGeometry& geom, double max_steer_x_deg,
                                               double max_steer_y_deg) {
    std::vector<std::string> warnings;
    auto check = [&](const char* axis, double d, double steer) {
        if (!grating_lobe_free(d, steer)) {
            warnings.push_back(fmt::format(
                "{} spacing d/lambda={} exceeds the grating-lobe limit {} for steering up to {} deg", axis,
                text::real(d), text::real(1.0 / (1.0 + std::abs(std::sin(deg_to_rad(steer))))),
                text::real(steer)));
        }
    };
    check("d1", geom.d1_over_lambda, max_steer_x_deg);
    if (geom.kind == ArrayKind::ura) check("d2", geom.d2_over_lambda, max_steer_y_deg);
    return warnings;
}

PhaseShifterSpec PhaseShifterSpec::with_bits(int bits) {
    if (bits < 1 || bits > 30) {
        throw InvalidGeometry(fmt::format("phase shifter bits must be in [1, 30], got {}", bits));
    }
    return PhaseShifterSpec{bits};
}

long long PhaseShifterSpec::levels() const {
    if (!bits) throw InvalidGeometry("unquantized phase shifter has no discrete levels");
    return 1LL << *bits;
}

double PhaseShifterSpec::step_radians() const { return 2.0 * kPi / static_cast<double>(levels()); }

std::string geometry_fingerprint(const ArrayGeometry& geom, const PhaseShifterSpec& phases) {
    return fmt::format("kind={};n1={};n2={};d1_over_lambda={};d2_over_lambda={};bits={}", to_string(geom.kind),
                       geom.n1, geom.n2, text::real(geom.d1_over_lambda),
                       text::real(geom.kind == ArrayKind::ula ? geom.d1_over_lambda : geom.d2_over_lambda),
                       phases.bits ? std::to_string(*phases.bits) : std::string("inf"));
}

Direction Direction::from_azel(const AzEl& azel) { return azel_to_xy(azel); }

AzEl Direction::azel() const { return xy_to_azel(*this); }

Direction azel_to_xy(const AzEl& azel) {
    if (std::abs(azel.theta1_deg) > 180.0 || std::abs(azel.theta2_deg) > 90.0) {
        throw DomainError(fmt::format("azimuth-elevation pair ({}, {}) outside [-180, 180] x [-90, 90]",
                                      text::real(azel.theta1_deg), text::real(azel.theta2_deg)));
    }
    const double t1 = deg_to_rad(azel.theta1_deg);
    const double s2 = std::sin(deg_to_rad(azel.theta2_deg));
    const double sin_y = std::clamp(s2 * std::cos(t1), -1.0, 1.0);
    const double sin_x = std::clamp(s2 * std::sin(t1), -1.0, 1.0);
    return Direction::xy(rad_to_deg(std::asin(sin_x)), rad_to_deg(std::asin(sin_y)));
}

AzEl xy_to_azel(const Direction& dir) {
    if (std::abs(dir.theta_x_deg) > 90.0 || std::abs(dir.theta_y_deg) > 90.0) {
        throw DomainError(fmt::format("direction ({}, {}) outside [-90, 90] per axis", text::real(dir.theta_x_deg),
                                      text::real(dir.theta_y_deg)));
    }
    const double sx = std::sin(deg_to_rad(dir.theta_x_deg));
    const double sy = std::sin(deg_to_rad(dir.theta_y_deg));
    const double r2 = sx * sx + sy * sy;
    if (r2 > 1.0 + 1e-12) {
        throw DomainError(fmt::format("direction ({}, {}) is not visible: sin^2(theta_x) + sin^2(theta_y) = {} > 1",
                                      text::real(dir.theta_x_deg), text::real(dir.theta_y_deg), text::real(r2)));
    }
    const double r = std::min(1.0, std::sqrt(r2));
    const double theta2 = std::asin(r);
    const double theta1 = (r == 0.0) ? 0.0 : std::atan2(sx, sy);
    return AzEl{rad_to_deg(theta1), rad_to_deg(theta2)};
}

namespace {

void require_visible(double theta_deg) {
    if (!(std::abs(theta_deg) <= 90.0)) {
        throw DomainError(fmt::format("angle {} deg outside [-90, 90]", text::real(theta_deg)));
    }
}

// [1, e^{j step}, ..., e^{j (n-1) step}] computed per element, not by
// repeated multiplication, so long arrays do not accumulate rounding.
ComplexVector progression(int n, double step) {
    ComplexVector v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = std::polar(1.0, k * step);
    return v;
}

ComplexVector kron(const ComplexVector& v1, const ComplexVector& v2, double scale) {
    ComplexVector out;
    out.reserve(v1.size() * v2.size());
    for (const auto& a : v1) {
        for (const auto& b : v2) out.push_back(scale * a * b);
    }
    return out;
}

} // namespace

ComplexVector manifold_ula(const ArrayGeometry& geom, double theta_deg) {
    if (geom.kind != ArrayKind::ula) throw InvalidGeometry("manifold_ula requires a ULA geometry");
    require_visible(theta_deg);
    const double step = 2.0 * kPi * geom.d1_over_lambda * std::sin(deg_to_rad(theta_deg));
    auto v = progression(geom.n1, step);
    for (auto& e : v) e *= geom.path_gain;
    return v;
}

ComplexVector manifold_ura(const ArrayGeometry& geom, const Direction& dir) {
    if (geom.kind != ArrayKind::ura) throw InvalidGeometry("manifold_ura requires a URA geometry");
    require_visible(dir.theta_x_deg);
    require_visible(dir.theta_y_deg);
    const auto v1 = progression(geom.n1, 2.0 * kPi * geom.d1_over_lambda * std::sin(deg_to_rad(dir.theta_x_deg)));
    const auto v2 = progression(geom.n2, 2.0 * kPi * geom.d2_over_lambda * std::sin(deg_to_rad(dir.theta_y_deg)));
    return kron(v1, v2, geom.path_gain);
}

ComplexVector manifold_ura_azel(const ArrayGeometry& geom, const AzEl& azel) {
    if (geom.kind != ArrayKind::ura) throw InvalidGeometry("manifold_ura_azel requires a URA geometry");
    const double t1 = deg_to_rad(azel.theta1_deg);
    const double s2 = std::sin(deg_to_rad(azel.theta2_deg));
    // Horizontal axis follows sin(theta2) sin(theta1), vertical axis
    // sin(theta2) cos(theta1), matching the x/y mapping above.
    const auto v1 = progression(geom.n1, 2.0 * kPi * geom.d1_over_lambda * s2 * std::sin(t1));
    const auto v2 = progression(geom.n2, 2.0 * kPi * geom.d2_over_lambda * s2 * std::cos(t1));
    return kron(v1, v2, geom.path_gain);
}

ComplexVector manifold(const ArrayGeometry& geom, const Direction& dir) {
    return geom.kind == ArrayKind::ula ? manifold_ula(geom, dir.theta_x_deg) : manifold_ura(geom, dir);
}

SteeringVector optimal_steering(std::span<const Complex> manifold, const Direction& pointing) {
    if (manifold.empty()) throw DegenerateManifold("manifold is empty");
    const double norm = 1.0 / std::sqrt(static_cast<double>(manifold.size()));
    SteeringVector sv;
    sv.pointing = pointing;
    sv.weights.reserve(manifold.size());
    for (std::size_t n = 0; n < manifold.size(); ++n) {
        if (std::abs(manifold[n]) == 0.0) {
            throw DegenerateManifold(fmt::format("manifold element {} is zero", n));
        }
        sv.weights.push_back(std::polar(norm, -std::arg(manifold[n])));
    }
    return sv;
}

SteeringVector steer_toward(const ArrayGeometry& geom, const Direction& dir) {
    const auto a = manifold(geom, dir);
    return optimal_steering(a, dir);
}

long long quantize_phase_index(double phase_rad, const PhaseShifterSpec& spec) {
    const long long levels = spec.levels();
    double wrapped = std::fmod(phase_rad, 2.0 * kPi);
    if (wrapped < 0.0) wrapped += 2.0 * kPi;
    const double t = wrapped / spec.step_radians();
    auto k = static_cast<long long>(std::floor(t));
    if (t - static_cast<double>(k) > 0.5) ++k;
    return ((k % levels) + levels) % levels;
}

SteeringVector quantize_steering(const SteeringVector& v, const PhaseShifterSpec& spec) {
    if (!spec.quantized()) return v;
    SteeringVector out;
    out.pointing = v.pointing;
    out.quantized_bits = spec.bits;
    out.weights.reserve(v.weights.size());
    const double step = spec.step_radians();
    for (const auto& w : v.weights) {
        const auto k = quantize_phase_index(std::arg(w), spec);
        out.weights.push_back(std::polar(std::abs(w), static_cast<double>(k) * step));
    }
    return out;
}

double array_gain(std::span<const Complex> manifold, std::span<const Complex> weights) {
    if (manifold.size() != weights.size()) {
        throw DimensionMismatch(
            fmt::format("manifold has {} elements, steering vector has {}", manifold.size(), weights.size()));
    }
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < manifold.size(); ++n) acc += manifold[n] * weights[n];
    return std::norm(acc);
}

double gain_ratio(const ArrayGeometry& geom, const Direction& arrival, const SteeringVector& w) {
    const auto a = manifold(geom, arrival);
    return array_gain(a, w) / geom.max_gain();
}

} // namespace beamcover
