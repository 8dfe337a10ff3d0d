#pragma once

#include <string>
#include <vector>

#include "camtraj/dmr.hpp"

namespace camtraj {

// Spherical-motion planning parameters. Base rates are calibration
// constants: a 1 s medium move sweeps 30 degrees of arc or 0.3 scene units
// of radius.
struct PlanConfig {
    int fps = 25;
    double initial_phi = 0.0;     // degrees
    double initial_theta = 90.0;  // degrees (equator)
    double initial_radius = 2.0;  // scene units
    double base_angular_rate = 30.0;  // degrees/second for phi/theta moves
    double base_radial_rate = 0.3;    // scene units/second for zoom
    double speed_low = 0.5;
    double speed_medium = 1.0;
    double speed_high = 2.0;
    double theta_min = 1.0;   // polar clamp, degrees
    double theta_max = 179.0;
    double r_min = 0.1;
    double default_rotate_degrees = 45.0;  // when a rotating primitive omits it

    double multiplier(Speed s) const {
        switch (s) {
            case Speed::low: return speed_low;
            case Speed::high: return speed_high;
            default: return speed_medium;
        }
    }
    void validate() const;  // throws ValidationError
};

struct SphericalPoseSample {
    int frame_index = 0;
    double phi = 0.0;    // azimuth, degrees
    double theta = 90.0; // polar, degrees
    double radius = 2.0; // scene units
    double roll = 0.0;   // accumulated in-plane rotation, degrees, ccw positive
    double scale = 1.0;  // rotation rescale factor, (0, 1]
};

struct SphericalTrajectory {
    std::vector<SphericalPoseSample> samples;  // dense frames 0..N
    PlanConfig config;
    int width = 640;   // pixels, used by the rotation rescale
    int height = 360;
};

// N = f*t rounded to nearest, ties to even.
int frame_count(int fps, double duration_seconds);

// Per-frame increment (d_phi, d_theta, d_radius) realized from speed and
// direction; degrees and scene units per frame.
struct StepIncrement {
    double d_phi = 0.0;
    double d_theta = 0.0;
    double d_radius = 0.0;
};
StepIncrement step_increment(Speed speed, const DirectionSpec& direction,
                             const PlanConfig& config);

// Distributes a signed total rotation over N frames: angle_k = k*total/N,
// with the aspect-preserving rescale factor for each step. total is in
// degrees, ccw positive.
struct RotationStep {
    double angle = 0.0;  // degrees
    double scale = 1.0;
};
std::vector<RotationStep> rotation_track(double total_degrees, int frames, int width,
                                         int height);

// Plans the full per-frame trajectory. A primitive covering (a, b] applies
// its increment to every frame whose timestamp k/f lies in that interval;
// frames in gaps hold the previous pose.
SphericalTrajectory plan(const TrajectoryScript& script, const PlanConfig& config,
                         int width, int height);

// Keeps every `stride`-th sample (frames 0, stride, 2*stride, ...) and
// renumbers; fps in the config is divided accordingly.
SphericalTrajectory subsample(const SphericalTrajectory& traj, int stride);

// JSONL interchange: a header record followed by one record per sample,
// numbers at nine significant digits.
std::string trajectory_to_jsonl(const SphericalTrajectory& traj);
SphericalTrajectory trajectory_from_jsonl(const std::string& text);

}  // namespace camtraj
