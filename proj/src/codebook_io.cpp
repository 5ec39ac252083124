// SPDX-License-Identifier: Apache-2.0

#include "beamcover/codebook_io.hpp"

#include "beamcover/errors.hpp"
#include "beamcover/text.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace beamcover {

void write_metadata(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& items) {
    for (const auto& [key, value] : items) out << "# " << key << ": " << value << '\n';
}

void write_codebook_csv(std::ostream& out, const RefinedCodebook& book, const PhaseShifterSpec& phases,
                        const std::string& run_fingerprint) {
    const bool ura = book.geometry.kind == ArrayKind::ura;
    write_metadata(out, {{"fingerprint", run_fingerprint},
                         {"geometry", geometry_fingerprint(book.geometry, phases)},
                         {"gamma_db", text::real(book.threshold.gamma_db)}});
    out << (ura ? "entry_index,pointing_x_deg,pointing_y_deg,l_delta_x_deg,u_delta_x_deg,l_delta_y_deg,u_delta_y_deg"
                : "entry_index,pointing_deg,l_delta_deg,u_delta_deg");
    for (std::size_t n = 0; n < book.geometry.size(); ++n) out << ",phase_" << n;
    out << '\n';

    for (std::size_t k = 0; k < book.entries.size(); ++k) {
        const auto& e = book.entries[k];
        out << k << ',' << text::real(e.pointing.theta_x_deg);
        if (ura) out << ',' << text::real(e.pointing.theta_y_deg);
        out << ',' << text::real(e.region.x.lower_deg) << ',' << text::real(e.region.x.upper_deg);
        if (ura) {
            const auto& y = e.region.y.value();
            out << ',' << text::real(y.lower_deg) << ',' << text::real(y.upper_deg);
        }
        const auto beam = quantize_steering(e.vector, phases);
        for (const auto& w : beam.weights) {
            double phase = std::arg(w);
            if (phases.quantized()) phase = static_cast<double>(quantize_phase_index(phase, phases)) * phases.step_radians();
            out << ',' << text::real(phase);
        }
        out << '\n';
    }
}

std::string CodebookFile::get(const std::string& key) const {
    const auto it = metadata.find(key);
    return it == metadata.end() ? std::string{} : it->second;
}

std::vector<SteeringVector> CodebookFile::vectors() const {
    std::vector<SteeringVector> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.vector);
    return out;
}

CodebookFile read_codebook_csv(std::istream& in) {
    CodebookFile file;
    std::string line;
    std::size_t line_no = 0;
    std::size_t phase_columns = 0;
    std::size_t fixed_columns = 0;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++line_no;
        const auto trimmed = text::trim(line);
        if (trimmed.empty()) continue;
        if (trimmed.front() == '#') {
            if (have_header) throw ParseError("metadata after the header row", line_no);
            const auto body = text::trim(trimmed.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string_view::npos) throw ParseError("metadata line without ':'", line_no);
            file.metadata[std::string(text::trim(body.substr(0, colon)))] =
                std::string(text::trim(body.substr(colon + 1)));
            continue;
        }
        const auto fields = text::split(trimmed);
        if (!have_header) {
            if (fields.empty() || text::trim(fields[0]) != "entry_index") {
                throw ParseError("expected header row starting with 'entry_index'", line_no);
            }
            if (fields.size() > 1 && text::trim(fields[1]) == "pointing_x_deg") {
                file.two_dimensional = true;
                fixed_columns = 7;
            } else if (fields.size() > 1 && text::trim(fields[1]) == "pointing_deg") {
                fixed_columns = 4;
            } else {
                throw ParseError("unrecognized codebook header", line_no);
            }
            if (fields.size() <= fixed_columns) throw ParseError("header has no phase columns", line_no);
            phase_columns = fields.size() - fixed_columns;
            have_header = true;
            continue;
        }

        if (fields.size() != fixed_columns + phase_columns) {
            throw ParseError("expected " + std::to_string(fixed_columns + phase_columns) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        const auto index = text::parse_integer(fields[0], line_no);
        if (index != static_cast<long long>(file.entries.size())) {
            throw ParseError("entry indices must be consecutive from 0", line_no);
        }
        CodebookFileEntry e;
        std::size_t c = 1;
        e.pointing.theta_x_deg = text::parse_real(fields[c++], line_no);
        if (file.two_dimensional) e.pointing.theta_y_deg = text::parse_real(fields[c++], line_no);
        e.region.x.lower_deg = text::parse_real(fields[c++], line_no);
        e.region.x.upper_deg = text::parse_real(fields[c++], line_no);
        if (file.two_dimensional) {
            DeviationInterval y;
            y.lower_deg = text::parse_real(fields[c++], line_no);
            y.upper_deg = text::parse_real(fields[c++], line_no);
            e.region.y = y;
        }
        const double modulus = 1.0 / std::sqrt(static_cast<double>(phase_columns));
        e.vector.pointing = e.pointing;
        e.vector.weights.reserve(phase_columns);
        for (; c < fields.size(); ++c) e.vector.weights.push_back(std::polar(modulus, text::parse_real(fields[c], line_no)));
        file.entries.push_back(std::move(e));
    }
    if (!have_header) throw ParseError("missing header row", line_no + 1);
    return file;
}

} // namespace beamcover
