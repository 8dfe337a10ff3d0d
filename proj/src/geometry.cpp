#include "camtraj/geometry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "camtraj/common.hpp"

namespace camtraj {

Eigen::Vector3d spherical_to_position(double phi_deg, double theta_deg, double radius) {
    if (!(radius > 0.0)) throw ValidationError("radius must be positive");
    const double phi = deg_to_rad(phi_deg);
    const double theta = deg_to_rad(theta_deg);
    return {radius * std::sin(theta) * std::cos(phi), radius * std::cos(theta),
            radius * std::sin(theta) * std::sin(phi)};
}

Extrinsics look_at_extrinsics(const Eigen::Vector3d& camera_pos, const Eigen::Vector3d& target,
                              const Eigen::Vector3d& world_up, double roll_deg) {
    const Eigen::Vector3d offset = target - camera_pos;
    if (offset.norm() < 1e-12)
        throw ValidationError("look-at degenerate: camera at target");
    const Eigen::Vector3d forward = offset.normalized();
    Eigen::Vector3d right = forward.cross(world_up.normalized());
    if (right.norm() < 1e-12)
        throw ValidationError("look-at degenerate: view direction parallel to world up");
    right.normalize();
    const Eigen::Vector3d up = right.cross(forward);

    Eigen::Matrix3d base;
    base.row(0) = right;
    base.row(1) = up;
    base.row(2) = -forward;

    // In-plane roll about the viewing axis: the camera basis rotates ccw by
    // roll_deg as seen by the camera.
    const double c = std::cos(deg_to_rad(roll_deg));
    const double s = std::sin(deg_to_rad(roll_deg));
    Eigen::Matrix3d roll;
    roll << c, s, 0, -s, c, 0, 0, 0, 1;

    Extrinsics e;
    e.R = roll * base;
    e.t = -e.R * camera_pos;
    return e;
}

PoseSequence trajectory_to_poses(const SphericalTrajectory& traj,
                                 const Intrinsics& base_intrinsics) {
    PoseSequence seq;
    seq.frames.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        PoseFrame f;
        f.frame_index = s.frame_index;
        f.intrinsics = base_intrinsics;
        f.intrinsics.fx = base_intrinsics.fx * s.scale;
        f.intrinsics.fy = base_intrinsics.fy * s.scale;
        const Eigen::Vector3d pos = spherical_to_position(s.phi, s.theta, s.radius);
        f.extrinsics = look_at_extrinsics(pos, Eigen::Vector3d::Zero(),
                                          Eigen::Vector3d(0, 1, 0), s.roll);
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

std::string pose_sequence_to_text(const PoseSequence& seq) {
    std::ostringstream out;
    for (const auto& f : seq.frames) {
        out << f.frame_index << ' ' << format_sig9(f.intrinsics.fx) << ' '
            << format_sig9(f.intrinsics.fy) << ' ' << format_sig9(f.intrinsics.cx) << ' '
            << format_sig9(f.intrinsics.cy);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) out << ' ' << format_sig9(f.extrinsics.R(r, c));
            out << ' ' << format_sig9(f.extrinsics.t(r));
        }
        out << '\n';
    }
    return out.str();
}

PoseSequence pose_sequence_from_text(const std::string& text) {
    PoseSequence seq;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::string> fields;
        std::string tok;
        while (ls >> tok) fields.push_back(tok);
        if (fields.size() != 17)
            throw ParseError("expected 17 fields, got " + std::to_string(fields.size()),
                             "line " + std::to_string(lineno));
        PoseFrame f;
        try {
            f.frame_index = static_cast<int>(parse_number(fields[0]));
            f.intrinsics.fx = parse_number(fields[1]);
            f.intrinsics.fy = parse_number(fields[2]);
            f.intrinsics.cx = parse_number(fields[3]);
            f.intrinsics.cy = parse_number(fields[4]);
            int i = 5;
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) f.extrinsics.R(r, c) = parse_number(fields[i++]);
                f.extrinsics.t(r) = parse_number(fields[i++]);
            }
        } catch (const ParseError& e) {
            throw ParseError(e.what(), "line " + std::to_string(lineno));
        }
        f.intrinsics.width = static_cast<int>(std::lround(2.0 * f.intrinsics.cx));
        f.intrinsics.height = static_cast<int>(std::lround(2.0 * f.intrinsics.cy));
        seq.frames.push_back(std::move(f));
    }
    return seq;
}

void write_pose_file(const PoseSequence& seq, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << pose_sequence_to_text(seq);
    if (!out) throw IoError("write failed for '" + path + "'");
}

PoseSequence read_pose_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return pose_sequence_from_text(buf.str());
}

}  // namespace camtraj
