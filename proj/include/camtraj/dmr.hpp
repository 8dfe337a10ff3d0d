#pragma once

#include <optional>
#include <string>
#include <vector>

namespace camtraj {

enum class Speed { low, medium, high };
enum class Rotate { cw, ccw, none };
enum class Radial { zoom_in, zoom_out };

const char* to_string(Speed s);
const char* to_string(Rotate r);
const char* to_string(Radial r);

// Image-plane movement direction. 0 deg = right, 90 deg = up, counterclockwise.
// Both parts optional; an empty spec belongs to a rotation-only primitive.
struct DirectionSpec {
    std::optional<double> planar_angle;  // degrees in [0, 360)
    std::optional<Radial> radial;

    bool empty() const { return !planar_angle && !radial; }
    bool operator==(const DirectionSpec&) const = default;
};

// One camera operation: <starttime, endtime, speed, direction, rotate>.
// rotate_degrees is the optional total rotation magnitude; its sign comes
// from `rotate` (ccw positive downstream).
struct MotionPrimitive {
    double start_time = 0.0;  // seconds
    double end_time = 0.0;    // seconds, > start_time
    Speed speed = Speed::medium;
    DirectionSpec direction;
    Rotate rotate = Rotate::none;
    std::optional<double> rotate_degrees;  // positive magnitude

    bool operator==(const MotionPrimitive&) const = default;
};

// Ordered, non-overlapping operations plus the clip length. Gaps between
// primitives are allowed; nothing happens during them.
struct TrajectoryScript {
    std::vector<MotionPrimitive> primitives;
    double total_duration = 0.0;  // seconds, >= max end_time

    bool operator==(const TrajectoryScript&) const = default;
};

struct Violation {
    int primitive_index;  // -1 for script-level violations
    std::string rule;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

ValidationReport validate_script(const TrajectoryScript& script);

// Canonical single-line JSON document. Field names are starttime, endtime,
// speed, direction, rotate (plus the optional rotate_degrees extension).
// Primitives are emitted in start_time order regardless of construction
// order; numbers use at most six fractional digits.
std::string script_to_json(const TrajectoryScript& script);

// Inverse of script_to_json. Throws ParseError (with position) on malformed
// documents, unknown fields, or missing required fields.
TrajectoryScript json_to_script(const std::string& document);

}  // namespace camtraj
