// SPDX-License-Identifier: Apache-2.0
//
// Phased-array primitives: geometry, manifold vectors, unit-modulus steering
// vectors, phase-shifter quantization and array gain for uniform linear (ULA)
// and uniform rectangular (URA) arrays.
//
// Conventions
//   * Angles are degrees at every public interface and radians internally.
//   * Element spacing is stored as d/lambda.
//   * URA elements are flattened as n = m1 * n2 + m2 (0-based), with m1 the
//     horizontal index (spacing d1, angle theta_x) and m2 the vertical index
//     (spacing d2, angle theta_y).
//   * Steering weights carry the 1/sqrt(N) normalization, manifolds carry the
//     path gain beta, so |a . w|^2 peaks at N * beta^2.

#ifndef BEAMCOVER_ARRAY_MODEL_HPP
#define BEAMCOVER_ARRAY_MODEL_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace beamcover {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

enum class ArrayKind { ula, ura };

std::string to_string(ArrayKind kind);
ArrayKind parse_array_kind(const std::string& text);

struct ArrayGeometry {
    ArrayKind kind = ArrayKind::ula;
    int n1 = 1;                 // ULA element count, or URA horizontal count
    int n2 = 1;                 // URA vertical count; always 1 for a ULA
    double d1_over_lambda = 0.5;
    double d2_over_lambda = 0.5;
    double path_gain = 1.0;     // beta

    static ArrayGeometry ula(int n, double d_over_lambda, double path_gain = 1.0);
    static ArrayGeometry ura(int n1, int n2, double d1_over_lambda, double d2_over_lambda,
                             double path_gain = 1.0);

    // d/lambda from a physical spacing and carrier frequency.
    static double spacing_ratio(double spacing_m, double carrier_ghz);

    std::size_t size() const noexcept { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }

    // N * beta^2, the gain of a perfectly conjugated steering vector.
    double max_gain() const noexcept { return static_cast<double>(size()) * path_gain * path_gain; }

    // Throws InvalidGeometry when an invariant is violated.
    void validate() const;

    friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;
};

// Spacing condition d/lambda <= 1 / (1 + |sin(max_steer)|) for a grating-lobe
// free main beam over [-max_steer, max_steer].
bool grating_lobe_free(double d_over_lambda, double max_steer_deg) noexcept;

// Human-readable warnings for every axis that violates grating_lobe_free.
std::vector<std::string> grating_lobe_warnings(const ArrayGeometry& geom, double max_steer_x_deg,
                                               double max_steer_y_deg);

// Resolution of the per-element phase shifters. An empty `bits` stands for
// continuous (unquantized) phases.
struct PhaseShifterSpec {
    std::optional<int> bits;

    static PhaseShifterSpec unquantized() { return {}; }
    static PhaseShifterSpec with_bits(int bits);

    bool quantized() const noexcept { return bits.has_value(); }
    long long levels() const;   // 2^bits; throws on the unquantized sentinel
    double step_radians() const; // 2 pi / levels

    friend bool operator==(const PhaseShifterSpec&, const PhaseShifterSpec&) = default;
};

// Canonical text identifying a geometry and phase resolution, e.g.
// "kind=ULA;n1=8;n2=1;d1_over_lambda=0.5;d2_over_lambda=0.5;bits=inf".
std::string geometry_fingerprint(const ArrayGeometry& geom, const PhaseShifterSpec& phases);

struct AzEl {
    double theta1_deg = 0.0; // azimuth
    double theta2_deg = 0.0; // elevation
};

// Pointing or arrival direction. A ULA uses theta_x_deg only. A URA direction
// is stored in the x/y rotation-angle system; the azimuth-elevation pair is
// derived on demand.
struct Direction {
    double theta_x_deg = 0.0;
    double theta_y_deg = 0.0;

    static Direction ula(double theta_deg) { return {theta_deg, 0.0}; }
    static Direction xy(double theta_x_deg, double theta_y_deg) { return {theta_x_deg, theta_y_deg}; }
    static Direction from_azel(const AzEl& azel);

    double theta_deg() const noexcept { return theta_x_deg; }
    AzEl azel() const;

    friend bool operator==(const Direction&, const Direction&) = default;
};

// sin(theta_y) = sin(theta2) cos(theta1), sin(theta_x) = sin(theta2) sin(theta1).
// Throws DomainError for |theta1| > 180 or |theta2| > 90.
Direction azel_to_xy(const AzEl& azel);

// Inverse of azel_to_xy with theta2 in [0, 90] and theta1 in (-180, 180].
// Throws DomainError when sin^2(theta_x) + sin^2(theta_y) > 1 or an angle
// leaves [-90, 90].
AzEl xy_to_azel(const Direction& dir);

struct SteeringVector {
    ComplexVector weights;
    Direction pointing;
    std::optional<int> quantized_bits;

    std::size_t size() const noexcept { return weights.size(); }
};

// beta * [1, e^{j 2 pi d sin(theta)}, ..., e^{j (N-1) 2 pi d sin(theta)}]
ComplexVector manifold_ula(const ArrayGeometry& geom, double theta_deg);

// beta * (v1 (x) v2) in the x/y form: v1 advances by 2 pi d1 sin(theta_x),
// v2 by 2 pi d2 sin(theta_y).
ComplexVector manifold_ura(const ArrayGeometry& geom, const Direction& dir);

// Same manifold evaluated directly from an azimuth-elevation pair, without
// going through the x/y conversion.
ComplexVector manifold_ura_azel(const ArrayGeometry& geom, const AzEl& azel);

// Dispatches on geom.kind.
ComplexVector manifold(const ArrayGeometry& geom, const Direction& dir);

// Phase-conjugate weights (1/sqrt(N)) e^{-j arg(a_n)}.
SteeringVector optimal_steering(std::span<const Complex> manifold, const Direction& pointing = {});

// optimal_steering(manifold(geom, dir), dir)
SteeringVector steer_toward(const ArrayGeometry& geom, const Direction& dir);

// Rounds every phase to the nearest of 2 pi k / 2^M on the circle; exact ties
// go to the lower level. Moduli are preserved. The unquantized spec returns
// the input unchanged.
SteeringVector quantize_steering(const SteeringVector& v, const PhaseShifterSpec& spec);

// Nearest quantization level index in [0, 2^M) for a phase in radians.
long long quantize_phase_index(double phase_rad, const PhaseShifterSpec& spec);

// |sum_n a_n w_n|^2
double array_gain(std::span<const Complex> manifold, std::span<const Complex> weights);

inline double array_gain(std::span<const Complex> manifold, const SteeringVector& w) {
    return array_gain(manifold, std::span<const Complex>(w.weights));
}

// Gain toward `arrival` normalized by geom.max_gain().
double gain_ratio(const ArrayGeometry& geom, const Direction& arrival, const SteeringVector& w);

} // namespace beamcover

#endif // BEAMCOVER_ARRAY_MODEL_HPP
