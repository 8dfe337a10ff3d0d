#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace camtraj {

// Error raised for malformed textual input (instructions, DMR documents,
// pose files). `where` carries a human-readable location: a clause index,
// a line number, or a byte offset, depending on the source.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::string where = {})
        : std::runtime_error(where.empty() ? message : where + ": " + message),
          where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Semantic violations (invalid scripts, degenerate geometry).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

// Canonical number formatting for DMR documents and instruction text:
// fixed notation, at most six fractional digits, trailing zeros trimmed.
// "1.000000" -> "1", "0.500000" -> "0.5", "123.400000" -> "123.4".
std::string format_number(double value);

// Trajectory/pose interchange formatting: nine significant digits.
std::string format_sig9(double value);

// strtod wrapper that requires the whole token to be consumed.
double parse_number(const std::string& token);

// Normalizes a value to the canonical <=6-fractional-digit grid so that
// format_number/parse_number round-trip it exactly.
inline double snap_number(double value) { return parse_number(format_number(value)); }

}  // namespace camtraj
