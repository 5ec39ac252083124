// SPDX-License-Identifier: Apache-2.0

#include "beamcover/steering_io.hpp"

#include "beamcover/errors.hpp"
#include "beamcover/text.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace beamcover {

namespace {
constexpr std::string_view kGeometryPrefix = "# geometry: ";
constexpr std::string_view kHeader = "index,phase_radians,re,im";
} // namespace

void write_steering_csv(std::ostream& out, const SteeringVector& v, const ArrayGeometry& geom,
                        const PhaseShifterSpec& phases) {
    if (v.size() != geom.size()) {
        throw DimensionMismatch("steering vector length does not match the geometry");
    }
    out << kGeometryPrefix << geometry_fingerprint(geom, phases) << '\n' << kHeader << '\n';
    for (std::size_t n = 0; n < v.size(); ++n) {
        const auto& w = v.weights[n];
        out << n << ',' << text::real(std::arg(w)) << ',' << text::real(w.real()) << ',' << text::real(w.imag())
            << '\n';
    }
}

SteeringFile read_steering_csv(std::istream& in) {
    SteeringFile file;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty steering vector file", 1);
    ++line_no;
    if (line.rfind(kGeometryPrefix, 0) != 0) throw ParseError("missing '# geometry:' line", line_no);
    file.geometry_fingerprint = std::string(text::trim(std::string_view(line).substr(kGeometryPrefix.size())));

    if (!std::getline(in, line) || text::trim(line) != kHeader) {
        throw ParseError("expected header '" + std::string(kHeader) + "'", line_no + 1);
    }
    ++line_no;

    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        const auto fields = text::split(line);
        if (fields.size() != 4) throw ParseError("expected 4 fields", line_no);
        const auto index = text::parse_integer(fields[0], line_no);
        if (index != static_cast<long long>(file.vector.weights.size())) {
            throw ParseError("element indices must be consecutive from 0", line_no);
        }
        const double re = text::parse_real(fields[2], line_no);
        const double im = text::parse_real(fields[3], line_no);
        file.vector.weights.emplace_back(re, im);
    }
    if (file.vector.weights.empty()) throw ParseError("no elements", line_no);
    return file;
}

} // namespace beamcover
