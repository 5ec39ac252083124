// SPDX-License-Identifier: Apache-2.0
//
// Bracketing root finder used by the coverage solvers.

#ifndef BEAMCOVER_ROOTS_HPP
#define BEAMCOVER_ROOTS_HPP

#include "beamcover/errors.hpp"

#include <cmath>

namespace beamcover::roots {

struct BisectionResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs (a zero at
// an endpoint counts as the lo side). Stops once the bracket collapses to
// adjacent doubles, |f| drops below `tolerance` with the bracket narrower
// than `tolerance`, or `max_iterations` is reached.
template <class F>
BisectionResult bisect(F&& f, double lo, double hi, double tolerance = 1e-10, int max_iterations = 200) {
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return {lo, 0.0, 0};
    if (f_hi == 0.0) return {hi, 0.0, 0};
    if ((f_lo > 0.0) == (f_hi > 0.0)) throw Error("bisect: root not bracketed");

    BisectionResult result;
    for (result.iterations = 1; result.iterations <= max_iterations; ++result.iterations) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return {mid, 0.0, result.iterations};
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if (hi - lo < tolerance * 1e-6 && std::abs(f_mid) < tolerance) break;
    }
    result.root = 0.5 * (lo + hi);
    result.residual = f(result.root);
    return result;
}

} // namespace beamcover::roots

#endif // BEAMCOVER_ROOTS_HPP
