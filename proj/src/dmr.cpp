#include "camtraj/dmr.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "camtraj/common.hpp"

namespace camtraj {

const char* to_string(Speed s) {
    switch (s) {
        case Speed::low: return "low";
        case Speed::medium: return "medium";
        case Speed::high: return "high";
    }
    return "?";
}

const char* to_string(Rotate r) {
    switch (r) {
        case Rotate::cw: return "clockwise";
        case Rotate::ccw: return "counterclockwise";
        case Rotate::none: return "none";
    }
    return "?";
}

const char* to_string(Radial r) {
    return r == Radial::zoom_in ? "zoom_in" : "zoom_out";
}

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (size_t i = 0; i < violations.size(); ++i) {
        if (i) out << "; ";
        if (violations[i].primitive_index >= 0)
            out << "primitive " << violations[i].primitive_index << ": ";
        out << violations[i].rule;
    }
    return out.str();
}

ValidationReport validate_script(const TrajectoryScript& script) {
    ValidationReport report;
    auto add = [&](int idx, std::string rule) {
        report.violations.push_back({idx, std::move(rule)});
    };

    double max_end = 0.0;
    for (size_t i = 0; i < script.primitives.size(); ++i) {
        const MotionPrimitive& p = script.primitives[i];
        const int idx = static_cast<int>(i);
        if (p.start_time < 0.0) add(idx, "negative start time");
        if (!(p.end_time > p.start_time)) add(idx, "empty interval");
        if (p.rotate_degrees && p.rotate == Rotate::none)
            add(idx, "rotate_degrees without rotation direction");
        if (p.rotate_degrees && !(*p.rotate_degrees > 0.0))
            add(idx, "non-positive rotate_degrees");
        if (p.direction.empty() && p.rotate == Rotate::none)
            add(idx, "no motion (empty direction and no rotation)");
        if (p.direction.planar_angle &&
            (*p.direction.planar_angle < 0.0 || *p.direction.planar_angle >= 360.0))
            add(idx, "planar angle outside [0, 360)");
        if (i > 0) {
            const MotionPrimitive& prev = script.primitives[i - 1];
            if (p.start_time < prev.start_time)
                add(idx, "not sorted by start time");
            else if (p.start_time < prev.end_time)
                add(idx, "overlap at index " + std::to_string(i));
        }
        max_end = std::max(max_end, p.end_time);
    }
    if (script.total_duration < max_end)
        add(-1, "total_duration shorter than last end time");
    return report;
}

namespace {

void append_direction(std::string& out, const DirectionSpec& d) {
    out += '{';
    bool first = true;
    if (d.planar_angle) {
        out += "\"angle\":" + format_number(*d.planar_angle);
        first = false;
    }
    if (d.radial) {
        if (!first) out += ',';
        out += "\"radial\":\"";
        out += to_string(*d.radial);
        out += '"';
    }
    out += '}';
}

Speed speed_from_string(const std::string& s) {
    if (s == "low") return Speed::low;
    if (s == "medium") return Speed::medium;
    if (s == "high") return Speed::high;
    throw ParseError("unknown speed '" + s + "'");
}

Rotate rotate_from_string(const std::string& s) {
    if (s == "clockwise" || s == "cw") return Rotate::cw;
    if (s == "counterclockwise" || s == "ccw") return Rotate::ccw;
    if (s == "none") return Rotate::none;
    throw ParseError("unknown rotate '" + s + "'");
}

Radial radial_from_string(const std::string& s) {
    if (s == "zoom_in") return Radial::zoom_in;
    if (s == "zoom_out") return Radial::zoom_out;
    throw ParseError("unknown radial direction '" + s + "'");
}

void check_known_fields(const nlohmann::json& obj, std::initializer_list<const char*> known,
                        const char* what) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return key == k; }) == known.end())
            throw ParseError("unknown field '" + key + "' in " + what);
    }
}

double require_num(const nlohmann::json& obj, const char* field, const char* what) {
    if (!obj.contains(field))
        throw ParseError(std::string("missing field '") + field + "' in " + what);
    if (!obj[field].is_number())
        throw ParseError(std::string("field '") + field + "' must be a number");
    return obj[field].get<double>();
}

}  // namespace

std::string script_to_json(const TrajectoryScript& script) {
    std::vector<size_t> order(script.primitives.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return script.primitives[a].start_time < script.primitives[b].start_time;
    });

    std::string out = "{\"primitives\":[";
    for (size_t k = 0; k < order.size(); ++k) {
        const MotionPrimitive& p = script.primitives[order[k]];
        if (k) out += ',';
        out += "{\"starttime\":" + format_number(p.start_time);
        out += ",\"endtime\":" + format_number(p.end_time);
        out += ",\"speed\":\"";
        out += to_string(p.speed);
        out += "\",\"direction\":";
        append_direction(out, p.direction);
        out += ",\"rotate\":\"";
        out += to_string(p.rotate);
        out += '"';
        if (p.rotate_degrees)
            out += ",\"rotate_degrees\":" + format_number(*p.rotate_degrees);
        out += '}';
    }
    out += "],\"total_duration\":" + format_number(script.total_duration) + "}";
    return out;
}

TrajectoryScript json_to_script(const std::string& document) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object()) throw ParseError("DMR document must be a JSON object");
    check_known_fields(j, {"primitives", "total_duration"}, "script");
    if (!j.contains("primitives") || !j["primitives"].is_array())
        throw ParseError("missing field 'primitives' in script");

    TrajectoryScript script;
    for (const auto& pj : j["primitives"]) {
        if (!pj.is_object()) throw ParseError("primitive must be a JSON object");
        check_known_fields(
            pj, {"starttime", "endtime", "speed", "direction", "rotate", "rotate_degrees"},
            "primitive");
        MotionPrimitive p;
        p.start_time = require_num(pj, "starttime", "primitive");
        p.end_time = require_num(pj, "endtime", "primitive");
        if (pj.contains("speed")) p.speed = speed_from_string(pj["speed"].get<std::string>());
        if (pj.contains("rotate")) p.rotate = rotate_from_string(pj["rotate"].get<std::string>());
        if (pj.contains("rotate_degrees"))
            p.rotate_degrees = pj["rotate_degrees"].get<double>();
        if (pj.contains("direction")) {
            const auto& dj = pj["direction"];
            if (!dj.is_object()) throw ParseError("direction must be a JSON object");
            check_known_fields(dj, {"angle", "radial"}, "direction");
            if (dj.contains("angle")) p.direction.planar_angle = dj["angle"].get<double>();
            if (dj.contains("radial"))
                p.direction.radial = radial_from_string(dj["radial"].get<std::string>());
        }
        script.primitives.push_back(std::move(p));
    }
    if (j.contains("total_duration")) {
        script.total_duration = j["total_duration"].get<double>();
    } else {
        for (const auto& p : script.primitives)
            script.total_duration = std::max(script.total_duration, p.end_time);
    }
    return script;
}

}  // namespace camtraj
