#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hapslink {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A single argument value is unusable (non-finite, out of documented range).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Geometry with no well-defined answer (coincident points, zero-length axis).
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

// A configuration object violates one or more structural invariants.
// Carries the full violation list so callers can report everything at once.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::vector<std::string>& violations)
        : Error(join(violations)), violations_(violations) {}
    explicit ConfigError(const std::string& msg)
        : Error(msg), violations_{msg} {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += "; ";
            out += v[i];
        }
        return out;
    }

    std::vector<std::string> violations_;
};

// Simulation state broke a structural invariant mid-run (platoon ordering).
class InvalidStateError : public Error {
public:
    using Error::Error;
};

// Scenario text is not valid JSON. Position is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(msg), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace hapslink
