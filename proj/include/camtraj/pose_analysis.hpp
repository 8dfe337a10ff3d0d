#pragma once

#include <string>

#include "camtraj/geometry.hpp"

namespace camtraj {

// Centered moving-average smoothing. Positions use the arithmetic mean over
// the window (truncated at the edges); rotations use normalized linear
// quaternion blending sign-aligned to the window center.
struct SmoothingConfig {
    int window = 1;  // odd, >= 1; 1 is the identity
};

PoseSequence smooth_poses(const PoseSequence& seq, const SmoothingConfig& cfg);

// Quantization thresholds for reverse parsing.
struct InversionTolerances {
    double eps_step = 1e-6;       // degrees/frame; segment-boundary threshold
    double eps_angle_fine = 1.0;  // degrees; fine direction agreement
    double time_tol = 0.02;       // seconds; half a frame period at 25 fps
    // Snap per-frame deltas to the nearest speed tier (including zero)
    // before segmentation. Off by default: exact run grouping for clean
    // data. Turn on for jittered/smoothed trajectories, where boundary
    // frames blend the rates of adjacent segments.
    bool quantize_rates = false;
    double roll_rate_floor = 7.0;  // degrees/second; rotation detection in
                                   // quantize mode

    static InversionTolerances for_fps(double fps) {
        InversionTolerances t;
        t.time_tol = 0.5 / fps;
        return t;
    }
};

// Maps world-to-camera poses into the planner's spherical coordinates about
// `center`. Azimuth is unwrapped to be continuous; roll is recovered as the
// in-plane angle against the roll-free look-at frame; scale is set to 1.
SphericalTrajectory poses_to_spherical(const PoseSequence& seq,
                                       const Eigen::Vector3d& center = Eigen::Vector3d::Zero(),
                                       const PlanConfig& config = {});

// Reverse parsing: quantizes a dense trajectory back into a script. Frames
// are grouped into maximal runs of constant per-frame delta (within
// eps_step); zero-delta runs become gaps; each run becomes one primitive
// with speed classified to the nearest multiplier (ties toward medium).
TrajectoryScript invert_to_script(const SphericalTrajectory& traj, double fps,
                                  const InversionTolerances& tol = {},
                                  const PlanConfig& rates = {});

// Simplified third-party trajectory CSV: idx,x,y,z,qw,qx,qy,qz per line,
// where xyz is the camera position and q the world-to-camera rotation.
PoseSequence read_pose_csv(const std::string& path, const Intrinsics& intrinsics);
PoseSequence pose_sequence_from_csv(const std::string& text, const Intrinsics& intrinsics);

}  // namespace camtraj
