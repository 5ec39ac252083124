// SPDX-License-Identifier: Apache-2.0
//
// Codebook CSV. Metadata lines start with '#' and hold "key: value" pairs;
// the header row follows.
//
//   # fingerprint: 9c1d...
//   # geometry: kind=ULA;n1=4;n2=1;d1_over_lambda=0.4307;d2_over_lambda=0.4307;bits=inf
//   # gamma_db: 3
//   entry_index,pointing_deg,l_delta_deg,u_delta_deg,phase_0,...,phase_3          (ULA)
//   entry_index,pointing_x_deg,pointing_y_deg,l_delta_x_deg,u_delta_x_deg,
//       l_delta_y_deg,u_delta_y_deg,phase_0,...                                   (URA)
//
// Phases are in radians, one column per element in flattening order.

#ifndef BEAMCOVER_CODEBOOK_IO_HPP
#define BEAMCOVER_CODEBOOK_IO_HPP

#include "beamcover/codebook.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace beamcover {

void write_codebook_csv(std::ostream& out, const RefinedCodebook& book, const PhaseShifterSpec& phases,
                        const std::string& run_fingerprint);

struct CodebookFileEntry {
    Direction pointing;
    CoverageRegion region;
    SteeringVector vector;
};

struct CodebookFile {
    std::map<std::string, std::string> metadata;
    bool two_dimensional = false;
    std::vector<CodebookFileEntry> entries;

    std::string get(const std::string& key) const;
    std::vector<SteeringVector> vectors() const;
};

// Throws ParseError carrying the 1-based line number of the first bad line.
CodebookFile read_codebook_csv(std::istream& in);

// Writes "# key: value" lines.
void write_metadata(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& items);

} // namespace beamcover

#endif // BEAMCOVER_CODEBOOK_IO_HPP
