// SPDX-License-Identifier: Apache-2.0
//
// Exception types raised by the beamcover library. Every error derives from
// beamcover::Error so callers that do not care about the category can catch
// a single type.

#ifndef BEAMCOVER_ERRORS_HPP
#define BEAMCOVER_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beamcover {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidGeometry : public Error {
public:
    using Error::Error;
};

class DegenerateManifold : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Angle outside the visible region, or a coordinate pair with no
// azimuth-elevation preimage.
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidThreshold : public Error {
public:
    using Error::Error;
};

// A grid point that no candidate steering vector covers.
class UncoverablePoint : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class FingerprintMismatch : public Error {
public:
    using Error::Error;
};

} // namespace beamcover

#endif // BEAMCOVER_ERRORS_HPP
