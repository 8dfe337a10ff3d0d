#include "camtraj/pose_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "camtraj/common.hpp"

namespace camtraj {

PoseSequence smooth_poses(const PoseSequence& seq, const SmoothingConfig& cfg) {
    if (cfg.window < 1 || cfg.window % 2 == 0)
        throw ValidationError("smoothing window must be odd and >= 1");
    if (seq.frames.empty()) throw ValidationError("empty pose sequence");
    if (cfg.window == 1) return seq;

    const int n = static_cast<int>(seq.frames.size());
    const int half = (cfg.window - 1) / 2;

    std::vector<Eigen::Vector3d> centers(n);
    std::vector<Eigen::Quaterniond> quats(n);
    for (int i = 0; i < n; ++i) {
        centers[i] = seq.frames[i].extrinsics.camera_position();
        quats[i] = Eigen::Quaterniond(seq.frames[i].extrinsics.R);
    }

    PoseSequence out = seq;
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);

        Eigen::Vector3d pos = Eigen::Vector3d::Zero();
        for (int j = lo; j <= hi; ++j) pos += centers[j];
        pos /= double(hi - lo + 1);

        // Normalized linear blend, sign-aligned to the center quaternion.
        Eigen::Vector4d acc = Eigen::Vector4d::Zero();
        const Eigen::Quaterniond& c = quats[i];
        for (int j = lo; j <= hi; ++j) {
            Eigen::Quaterniond q = quats[j];
            if (q.dot(c) < 0.0) q.coeffs() = -q.coeffs();
            acc += q.coeffs();
        }
        Eigen::Quaterniond blended(acc(3), acc(0), acc(1), acc(2));
        blended.normalize();

        out.frames[i].extrinsics.R = blended.toRotationMatrix();
        out.frames[i].extrinsics.t = -out.frames[i].extrinsics.R * pos;
    }
    return out;
}

SphericalTrajectory poses_to_spherical(const PoseSequence& seq, const Eigen::Vector3d& center,
                                       const PlanConfig& config) {
    if (seq.frames.empty()) throw ValidationError("empty pose sequence");
    SphericalTrajectory traj;
    traj.config = config;
    if (!seq.frames.empty()) {
        traj.width = seq.frames.front().intrinsics.width;
        traj.height = seq.frames.front().intrinsics.height;
    }
    traj.samples.reserve(seq.frames.size());

    double prev_phi = 0.0;
    double prev_roll = 0.0;
    for (size_t i = 0; i < seq.frames.size(); ++i) {
        const PoseFrame& f = seq.frames[i];
        const Eigen::Vector3d pos = f.extrinsics.camera_position() - center;
        const double r = pos.norm();
        if (r < 1e-12) throw ValidationError("camera position at the spherical center");

        SphericalPoseSample s;
        s.frame_index = static_cast<int>(i);
        s.radius = r;
        s.theta = rad_to_deg(std::acos(std::clamp(pos.y() / r, -1.0, 1.0)));
        s.phi = rad_to_deg(std::atan2(pos.z(), pos.x()));

        // Roll: in-plane angle between this pose and the roll-free look-at.
        const Extrinsics base = look_at_extrinsics(pos + center, center);
        const Eigen::Matrix3d m = f.extrinsics.R * base.R.transpose();
        s.roll = rad_to_deg(std::atan2(m(0, 1), m(0, 0)));
        s.scale = 1.0;

        if (i > 0) {
            // Unwrap so consecutive samples never jump by a full turn.
            s.phi += 360.0 * std::round((prev_phi - s.phi) / 360.0);
            s.roll += 360.0 * std::round((prev_roll - s.roll) / 360.0);
        }
        prev_phi = s.phi;
        prev_roll = s.roll;
        traj.samples.push_back(s);
    }
    return traj;
}

namespace {

struct FrameDelta {
    double d_phi = 0.0, d_theta = 0.0, d_radius = 0.0, d_roll = 0.0;
};

// Nearest speed multiplier; ties resolve toward medium.
Speed classify_speed(double m, const PlanConfig& rates) {
    const double dl = std::abs(m - rates.speed_low);
    const double dm = std::abs(m - rates.speed_medium);
    const double dh = std::abs(m - rates.speed_high);
    if (dm <= dl && dm <= dh) return Speed::medium;
    return dl <= dh ? Speed::low : Speed::high;
}

// Nearest of {0, low, medium, high} * base; returns the tier index 0..3.
int classify_tier(double rate, double base, const PlanConfig& rates) {
    const double tiers[4] = {0.0, rates.speed_low * base, rates.speed_medium * base,
                             rates.speed_high * base};
    int best = 0;
    double best_d = std::abs(rate);
    for (int i = 1; i < 4; ++i) {
        const double d = std::abs(rate - tiers[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

int compass_bin(double angle_deg) {
    double a = std::fmod(angle_deg + 22.5, 360.0);
    if (a < 0.0) a += 360.0;
    return static_cast<int>(a / 45.0);
}

struct FrameLabel {
    int planar_tier = 0;
    int bin = -1;
    int radial_tier = 0;
    int radial_sign = 0;
    int roll_sign = 0;
    bool operator==(const FrameLabel&) const = default;
    bool is_zero() const { return planar_tier == 0 && radial_tier == 0 && roll_sign == 0; }
};

}  // namespace

TrajectoryScript invert_to_script(const SphericalTrajectory& traj, double fps,
                                  const InversionTolerances& tol, const PlanConfig& rates) {
    if (traj.samples.empty()) throw ValidationError("empty trajectory");
    for (size_t i = 0; i < traj.samples.size(); ++i)
        if (traj.samples[i].frame_index != static_cast<int>(i))
            throw ValidationError("trajectory frames not dense from 0");
    if (fps <= 0.0) throw ValidationError("fps must be positive");

    const int n = static_cast<int>(traj.samples.size()) - 1;
    TrajectoryScript script;
    script.total_duration = snap_number(double(n) / fps);
    if (n == 0) return script;

    std::vector<FrameDelta> deltas(n + 1);  // deltas[k]: motion from k-1 to k
    for (int k = 1; k <= n; ++k) {
        const auto& a = traj.samples[k - 1];
        const auto& b = traj.samples[k];
        deltas[k] = {b.phi - a.phi, b.theta - a.theta, b.radius - a.radius, b.roll - a.roll};
    }

    // Segment frames 1..n into maximal runs.
    std::vector<std::pair<int, int>> runs;  // inclusive [first, last]
    std::vector<bool> run_zero;
    if (!tol.quantize_rates) {
        auto near_zero = [&](const FrameDelta& d) {
            return std::abs(d.d_phi) <= tol.eps_step && std::abs(d.d_theta) <= tol.eps_step &&
                   std::abs(d.d_radius) <= tol.eps_step && std::abs(d.d_roll) <= tol.eps_step;
        };
        auto same = [&](const FrameDelta& a, const FrameDelta& b) {
            return std::abs(a.d_phi - b.d_phi) <= tol.eps_step &&
                   std::abs(a.d_theta - b.d_theta) <= tol.eps_step &&
                   std::abs(a.d_radius - b.d_radius) <= tol.eps_step &&
                   std::abs(a.d_roll - b.d_roll) <= tol.eps_step;
        };
        int start = 1;
        for (int k = 2; k <= n + 1; ++k) {
            const bool boundary = (k == n + 1) || near_zero(deltas[k]) != near_zero(deltas[start]) ||
                                  (!near_zero(deltas[start]) && !same(deltas[k], deltas[start]));
            if (boundary) {
                runs.emplace_back(start, k - 1);
                run_zero.push_back(near_zero(deltas[start]));
                start = k;
            }
        }
    } else {
        std::vector<FrameLabel> labels(n + 1);
        for (int k = 1; k <= n; ++k) {
            const FrameDelta& d = deltas[k];
            FrameLabel& l = labels[k];
            const double planar_rate = std::hypot(d.d_phi, d.d_theta) * fps;
            l.planar_tier = classify_tier(planar_rate, rates.base_angular_rate, rates);
            if (l.planar_tier > 0) {
                double a = rad_to_deg(std::atan2(-d.d_theta, d.d_phi));
                if (a < 0.0) a += 360.0;
                l.bin = compass_bin(a);
            }
            l.radial_tier = classify_tier(std::abs(d.d_radius) * fps, rates.base_radial_rate, rates);
            l.radial_sign = l.radial_tier == 0 ? 0 : (d.d_radius < 0.0 ? -1 : 1);
            const double roll_rate = std::abs(d.d_roll) * fps;
            l.roll_sign = roll_rate > tol.roll_rate_floor ? (d.d_roll < 0.0 ? -1 : 1) : 0;
        }
        int start = 1;
        for (int k = 2; k <= n + 1; ++k) {
            if (k == n + 1 || !(labels[k] == labels[start])) {
                runs.emplace_back(start, k - 1);
                run_zero.push_back(labels[start].is_zero());
                start = k;
            }
        }
    }

    for (size_t ri = 0; ri < runs.size(); ++ri) {
        if (run_zero[ri]) continue;  // gap: the camera holds its pose
        const auto [first, last] = runs[ri];

        // Boundary frames of a quantized run blend adjacent rates; estimate
        // from the interior when the run is long enough.
        int est_lo = first, est_hi = last;
        if (tol.quantize_rates && last - first >= 2) {
            est_lo = first + 1;
            est_hi = last - 1;
        }
        FrameDelta mean;
        for (int k = est_lo; k <= est_hi; ++k) {
            mean.d_phi += deltas[k].d_phi;
            mean.d_theta += deltas[k].d_theta;
            mean.d_radius += deltas[k].d_radius;
            mean.d_roll += deltas[k].d_roll;
        }
        const double cnt = double(est_hi - est_lo + 1);
        mean.d_phi /= cnt;
        mean.d_theta /= cnt;
        mean.d_radius /= cnt;
        mean.d_roll /= cnt;

        MotionPrimitive p;
        p.start_time = snap_number(double(first - 1) / fps);
        p.end_time = snap_number(double(last) / fps);

        const double planar_step = std::hypot(mean.d_phi, mean.d_theta);
        bool planar, radial, rolling;
        if (!tol.quantize_rates) {
            planar = planar_step > tol.eps_step;
            radial = std::abs(mean.d_radius) > tol.eps_step;
            rolling = std::abs(mean.d_roll) > tol.eps_step;
        } else {
            planar = classify_tier(planar_step * fps, rates.base_angular_rate, rates) > 0;
            radial = classify_tier(std::abs(mean.d_radius) * fps, rates.base_radial_rate, rates) > 0;
            rolling = std::abs(mean.d_roll) * fps > tol.roll_rate_floor;
        }

        if (planar) {
            double a = rad_to_deg(std::atan2(-mean.d_theta, mean.d_phi));
            if (a < 0.0) a += 360.0;
            p.direction.planar_angle = a;
        }
        if (radial)
            p.direction.radial = mean.d_radius < 0.0 ? Radial::zoom_in : Radial::zoom_out;

        if (planar)
            p.speed = classify_speed(planar_step * fps / rates.base_angular_rate, rates);
        else if (radial)
            p.speed = classify_speed(std::abs(mean.d_radius) * fps / rates.base_radial_rate, rates);
        else
            p.speed = Speed::medium;

        if (rolling) {
            double total = 0.0;
            for (int k = first; k <= last; ++k) total += deltas[k].d_roll;
            p.rotate = total < 0.0 ? Rotate::cw : Rotate::ccw;
            p.rotate_degrees = std::abs(total);
        }

        if (p.direction.empty() && p.rotate == Rotate::none) continue;  // numeric dust
        script.primitives.push_back(std::move(p));
    }
    return script;
}

PoseSequence pose_sequence_from_csv(const std::string& text, const Intrinsics& intrinsics) {
    PoseSequence seq;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::string tok;
        std::istringstream ls(line);
        while (std::getline(ls, tok, ',')) fields.push_back(tok);
        if (fields.size() != 8)
            throw ParseError("expected 8 comma-separated fields",
                             "line " + std::to_string(lineno));
        try {
            PoseFrame f;
            f.frame_index = static_cast<int>(parse_number(fields[0]));
            const Eigen::Vector3d pos(parse_number(fields[1]), parse_number(fields[2]),
                                      parse_number(fields[3]));
            Eigen::Quaterniond q(parse_number(fields[4]), parse_number(fields[5]),
                                 parse_number(fields[6]), parse_number(fields[7]));
            q.normalize();
            f.intrinsics = intrinsics;
            f.extrinsics.R = q.toRotationMatrix();
            f.extrinsics.t = -f.extrinsics.R * pos;
            seq.frames.push_back(std::move(f));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), "line " + std::to_string(lineno));
        }
    }
    return seq;
}

PoseSequence read_pose_csv(const std::string& path, const Intrinsics& intrinsics) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return pose_sequence_from_csv(buf.str(), intrinsics);
}

}  // namespace camtraj
