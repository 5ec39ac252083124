// SPDX-License-Identifier: Apache-2.0
//
// Small text helpers shared by the CSV readers and writers.

#ifndef BEAMCOVER_TEXT_HPP
#define BEAMCOVER_TEXT_HPP

#include "beamcover/errors.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

namespace beamcover::text {

// Every float written to a CSV goes through here: 10 significant digits.
inline std::string real(double value) { return fmt::format("{:.10g}", value); }

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_real(std::string_view field, std::size_t line) {
    field = trim(field);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || field.empty()) {
        throw ParseError("expected a number, got '" + std::string(field) + "'", line);
    }
    return value;
}

inline long long parse_integer(std::string_view field, std::size_t line) {
    field = trim(field);
    long long value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || field.empty()) {
        throw ParseError("expected an integer, got '" + std::string(field) + "'", line);
    }
    return value;
}

// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", hash);
}

} // namespace beamcover::text

#endif // BEAMCOVER_TEXT_HPP
