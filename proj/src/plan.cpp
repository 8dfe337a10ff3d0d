#include "camtraj/plan.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "camtraj/common.hpp"

namespace camtraj {

void PlanConfig::validate() const {
    if (fps < 1) throw ValidationError("fps must be >= 1");
    if (base_angular_rate <= 0.0 || base_radial_rate <= 0.0)
        throw ValidationError("base rates must be positive");
    if (speed_low <= 0.0 || speed_medium <= 0.0 || speed_high <= 0.0)
        throw ValidationError("speed multipliers must be positive");
    if (!(theta_min < theta_max)) throw ValidationError("polar clamp empty");
    if (!(initial_radius > r_min)) throw ValidationError("initial radius below r_min");
    if (default_rotate_degrees <= 0.0)
        throw ValidationError("default_rotate_degrees must be positive");
}

int frame_count(int fps, double duration_seconds) {
    if (fps < 1) throw ValidationError("fps must be >= 1");
    if (duration_seconds < 0.0) throw ValidationError("duration must be >= 0");
    // nearbyint under the default rounding mode: nearest, ties to even.
    return static_cast<int>(std::nearbyint(double(fps) * duration_seconds));
}

StepIncrement step_increment(Speed speed, const DirectionSpec& direction,
                             const PlanConfig& config) {
    const double m = config.multiplier(speed);
    const double omega = config.base_angular_rate * m / double(config.fps);
    const double rho = config.base_radial_rate * m / double(config.fps);
    StepIncrement inc;
    if (direction.planar_angle) {
        const double a = deg_to_rad(*direction.planar_angle);
        inc.d_phi = omega * std::cos(a);
        inc.d_theta = -omega * std::sin(a);  // up = toward the pole
    }
    if (direction.radial)
        inc.d_radius = (*direction.radial == Radial::zoom_in) ? -rho : rho;
    return inc;
}

std::vector<RotationStep> rotation_track(double total_degrees, int frames, int width,
                                         int height) {
    if (frames < 1) throw ValidationError("rotation_track requires at least one frame");
    if (width < 1 || height < 1) throw ValidationError("image dimensions must be positive");
    const double w = width, h = height;
    std::vector<RotationStep> track(frames);
    for (int k = 1; k <= frames; ++k) {
        // k/N first so the final step lands on the total exactly.
        const double angle = total_degrees * (double(k) / double(frames));
        const double c = std::abs(std::cos(deg_to_rad(angle)));
        const double s = std::abs(std::sin(deg_to_rad(angle)));
        const double proj_w = w * c + h * s;
        const double proj_h = w * s + h * c;
        track[k - 1].angle = angle;
        track[k - 1].scale = std::min({w / proj_w, h / proj_h, 1.0});
    }
    return track;
}

SphericalTrajectory plan(const TrajectoryScript& script, const PlanConfig& config,
                         int width, int height) {
    config.validate();
    if (width < 1 || height < 1) throw ValidationError("image dimensions must be positive");
    ValidationReport report = validate_script(script);
    if (!report.ok()) throw ValidationError("invalid script: " + report.to_string());

    const int fps = config.fps;
    const int total_frames = frame_count(fps, script.total_duration);

    SphericalTrajectory traj;
    traj.config = config;
    traj.width = width;
    traj.height = height;
    traj.samples.resize(total_frames + 1);
    traj.samples[0] = {0, config.initial_phi, config.initial_theta, config.initial_radius,
                       0.0, 1.0};

    // Frame attribution: frame k (time k/f) belongs to the primitive whose
    // interval (a, b] contains it. The epsilon guards boundaries computed
    // through different floating-point paths; it is far below one frame.
    constexpr double kBoundaryEps = 1e-9;
    std::vector<int> owner(total_frames + 1, -1);
    for (size_t pi = 0; pi < script.primitives.size(); ++pi) {
        const MotionPrimitive& p = script.primitives[pi];
        for (int k = 1; k <= total_frames; ++k) {
            const double t = double(k) / double(fps);
            if (t - p.start_time > kBoundaryEps && t - p.end_time <= kBoundaryEps)
                owner[k] = static_cast<int>(pi);
        }
    }

    // Per-primitive rotation tracks, indexed by position within the primitive.
    std::vector<std::vector<RotationStep>> rotation(script.primitives.size());
    std::vector<int> frames_in(script.primitives.size(), 0);
    for (int k = 1; k <= total_frames; ++k)
        if (owner[k] >= 0) frames_in[owner[k]] += 1;
    for (size_t pi = 0; pi < script.primitives.size(); ++pi) {
        const MotionPrimitive& p = script.primitives[pi];
        if (p.rotate == Rotate::none || frames_in[pi] == 0) continue;
        const double magnitude = p.rotate_degrees.value_or(config.default_rotate_degrees);
        const double signed_total = (p.rotate == Rotate::ccw) ? magnitude : -magnitude;
        rotation[pi] = rotation_track(signed_total, frames_in[pi], width, height);
    }

    double roll_base = 0.0;   // accumulated roll at the start of the current primitive
    double scale_hold = 1.0;  // terminal rescale of the last rotation
    int last_owner = -1;
    int pos_in_primitive = 0;

    for (int k = 1; k <= total_frames; ++k) {
        SphericalPoseSample s = traj.samples[k - 1];
        s.frame_index = k;
        const int pi = owner[k];
        if (pi != last_owner) {
            if (last_owner >= 0 && !rotation[last_owner].empty()) {
                const MotionPrimitive& prev = script.primitives[last_owner];
                const double mag = prev.rotate_degrees.value_or(config.default_rotate_degrees);
                roll_base += (prev.rotate == Rotate::ccw) ? mag : -mag;
                scale_hold = rotation[last_owner].back().scale;
            }
            pos_in_primitive = 0;
            last_owner = pi;
        }
        if (pi >= 0) {
            const MotionPrimitive& p = script.primitives[pi];
            const StepIncrement inc = step_increment(p.speed, p.direction, config);
            s.phi += inc.d_phi;
            s.theta = std::clamp(s.theta + inc.d_theta, config.theta_min, config.theta_max);
            s.radius = std::max(s.radius + inc.d_radius, config.r_min);
            if (!rotation[pi].empty()) {
                const RotationStep& step = rotation[pi][pos_in_primitive];
                s.roll = roll_base + step.angle;
                s.scale = step.scale;
            } else {
                s.roll = roll_base;
                s.scale = scale_hold;
            }
            ++pos_in_primitive;
        }
        traj.samples[k] = s;
    }
    return traj;
}

SphericalTrajectory subsample(const SphericalTrajectory& traj, int stride) {
    if (stride < 1) throw ValidationError("stride must be >= 1");
    if (traj.config.fps % stride != 0)
        throw ValidationError("stride must divide fps");
    SphericalTrajectory out;
    out.config = traj.config;
    out.config.fps = traj.config.fps / stride;
    out.width = traj.width;
    out.height = traj.height;
    for (size_t i = 0; i < traj.samples.size(); i += stride) {
        SphericalPoseSample s = traj.samples[i];
        s.frame_index = static_cast<int>(out.samples.size());
        out.samples.push_back(s);
    }
    return out;
}

std::string trajectory_to_jsonl(const SphericalTrajectory& traj) {
    const PlanConfig& c = traj.config;
    std::ostringstream out;
    out << "{\"record\":\"header\",\"fps\":" << c.fps << ",\"width\":" << traj.width
        << ",\"height\":" << traj.height << ",\"initial\":[" << format_sig9(c.initial_phi)
        << ',' << format_sig9(c.initial_theta) << ',' << format_sig9(c.initial_radius)
        << "],\"base_angular_rate\":" << format_sig9(c.base_angular_rate)
        << ",\"base_radial_rate\":" << format_sig9(c.base_radial_rate)
        << ",\"speed_multipliers\":[" << format_sig9(c.speed_low) << ','
        << format_sig9(c.speed_medium) << ',' << format_sig9(c.speed_high)
        << "],\"polar_clamp\":[" << format_sig9(c.theta_min) << ',' << format_sig9(c.theta_max)
        << "],\"r_min\":" << format_sig9(c.r_min) << "}\n";
    for (const auto& s : traj.samples) {
        out << "{\"frame\":" << s.frame_index << ",\"phi\":" << format_sig9(s.phi)
            << ",\"theta\":" << format_sig9(s.theta) << ",\"r\":" << format_sig9(s.radius)
            << ",\"roll\":" << format_sig9(s.roll) << ",\"scale\":" << format_sig9(s.scale)
            << "}\n";
    }
    return out.str();
}

SphericalTrajectory trajectory_from_jsonl(const std::string& text) {
    SphericalTrajectory traj;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(e.what(), "line " + std::to_string(lineno));
        }
        if (j.contains("record") && j["record"] == "header") {
            PlanConfig& c = traj.config;
            c.fps = j.at("fps").get<int>();
            traj.width = j.at("width").get<int>();
            traj.height = j.at("height").get<int>();
            auto init = j.at("initial");
            c.initial_phi = init.at(0).get<double>();
            c.initial_theta = init.at(1).get<double>();
            c.initial_radius = init.at(2).get<double>();
            c.base_angular_rate = j.at("base_angular_rate").get<double>();
            c.base_radial_rate = j.at("base_radial_rate").get<double>();
            auto mult = j.at("speed_multipliers");
            c.speed_low = mult.at(0).get<double>();
            c.speed_medium = mult.at(1).get<double>();
            c.speed_high = mult.at(2).get<double>();
            auto clampv = j.at("polar_clamp");
            c.theta_min = clampv.at(0).get<double>();
            c.theta_max = clampv.at(1).get<double>();
            c.r_min = j.at("r_min").get<double>();
            have_header = true;
            continue;
        }
        SphericalPoseSample s;
        try {
            s.frame_index = j.at("frame").get<int>();
            s.phi = j.at("phi").get<double>();
            s.theta = j.at("theta").get<double>();
            s.radius = j.at("r").get<double>();
            s.roll = j.at("roll").get<double>();
            s.scale = j.at("scale").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(e.what(), "line " + std::to_string(lineno));
        }
        traj.samples.push_back(s);
    }
    if (!have_header) throw ParseError("trajectory stream has no header record");
    for (size_t i = 0; i < traj.samples.size(); ++i)
        if (traj.samples[i].frame_index != static_cast<int>(i))
            throw ParseError("frame indices not dense from 0");
    return traj;
}

}  // namespace camtraj
