#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "camtraj/plan.hpp"

namespace camtraj {

// Pinhole intrinsics. Principal point defaults to the image center and
// pixels are square unless overridden.
struct Intrinsics {
    double fx = 0.0, fy = 0.0;
    double cx = 0.0, cy = 0.0;
    int width = 0, height = 0;

    static Intrinsics centered(double focal_px, int width, int height) {
        return {focal_px, focal_px, width / 2.0, height / 2.0, width, height};
    }
};

// World-to-camera rigid transform [R|t].
struct Extrinsics {
    Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
    Eigen::Vector3d t = Eigen::Vector3d::Zero();

    Eigen::Vector3d camera_position() const { return -R.transpose() * t; }
    // Camera-to-world transform.
    Extrinsics inverse() const { return {R.transpose(), -R.transpose() * t}; }
};

struct PoseFrame {
    int frame_index = 0;
    Intrinsics intrinsics;
    Extrinsics extrinsics;
};

struct PoseSequence {
    std::vector<PoseFrame> frames;
};

// World convention: y-up, right-handed; camera looks along -z in camera
// space. Spherical mapping about the origin:
//   x = r sin(theta) cos(phi), y = r cos(theta), z = r sin(theta) sin(phi).
Eigen::Vector3d spherical_to_position(double phi_deg, double theta_deg, double radius);

// Look-at extrinsics with in-plane roll (degrees, ccw positive as seen by
// the camera). Throws ValidationError when the position coincides with the
// target or the view direction is parallel to world up.
Extrinsics look_at_extrinsics(const Eigen::Vector3d& camera_pos,
                              const Eigen::Vector3d& target = Eigen::Vector3d::Zero(),
                              const Eigen::Vector3d& world_up = Eigen::Vector3d(0, 1, 0),
                              double roll_deg = 0.0);

// One pose per trajectory sample; per-frame focal lengths are scaled by the
// sample's rescale factor, the principal point is untouched.
PoseSequence trajectory_to_poses(const SphericalTrajectory& traj,
                                 const Intrinsics& base_intrinsics);

// Text pose file, one line per frame:
//   idx fx fy cx cy r00 r01 r02 t0 r10 r11 r12 t1 r20 r21 r22 t2
// Nine significant digits. The file carries no image dimensions; readers
// reconstruct them as 2*cx x 2*cy (centered principal point).
void write_pose_file(const PoseSequence& seq, const std::string& path);
PoseSequence read_pose_file(const std::string& path);

std::string pose_sequence_to_text(const PoseSequence& seq);
PoseSequence pose_sequence_from_text(const std::string& text);

}  // namespace camtraj
