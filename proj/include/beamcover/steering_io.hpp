// SPDX-License-Identifier: Apache-2.0
//
// Columnar CSV for a single steering vector:
//
//   # geometry: kind=URA;n1=4;n2=4;d1_over_lambda=0.4307;d2_over_lambda=0.4307;bits=10
//   index,phase_radians,re,im
//   0,...
//
// Element order follows the URA flattening n = m1 * n2 + m2.

#ifndef BEAMCOVER_STEERING_IO_HPP
#define BEAMCOVER_STEERING_IO_HPP

#include "beamcover/array_model.hpp"

#include <iosfwd>
#include <string>

namespace beamcover {

void write_steering_csv(std::ostream& out, const SteeringVector& v, const ArrayGeometry& geom,
                        const PhaseShifterSpec& phases);

struct SteeringFile {
    std::string geometry_fingerprint;
    SteeringVector vector;
};

// Throws ParseError with the offending line number.
SteeringFile read_steering_csv(std::istream& in);

} // namespace beamcover

#endif // BEAMCOVER_STEERING_IO_HPP
