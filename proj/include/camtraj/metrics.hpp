#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "camtraj/dmr.hpp"
#include "camtraj/image.hpp"
#include "camtraj/pose_analysis.hpp"

namespace camtraj {

// Per-metric tally: correct / evaluated.
struct MetricCount {
    long correct = 0;
    long evaluated = 0;
    // Vacuously perfect when nothing qualified for evaluation.
    double percent() const {
        return evaluated == 0 ? 100.0 : 100.0 * double(correct) / double(evaluated);
    }
};

struct MetricsReport {
    double m_starttime = 0.0;
    double m_endtime = 0.0;
    double m_speed = 0.0;
    double m_rotate = 0.0;
    double m_d_course = 0.0;
    double m_d_fine = 0.0;
    double avg = 0.0;
    MetricCount counts_starttime, counts_endtime, counts_speed, counts_rotate,
        counts_d_course, counts_d_fine;

    std::array<double, 6> values() const {
        return {m_starttime, m_endtime, m_speed, m_rotate, m_d_course, m_d_fine};
    }
    std::string to_json() const;
    std::string to_table() const;
};

// Arithmetic mean of the six sub-metrics; the report aggregator.
double average_metric(const std::array<double, 6>& six);

// Start/end times are scored independently against time_tol; speed, rotate
// and both direction metrics are scored only for primitives whose start AND
// end are correct. Primitives are matched by index; surplus primitives on
// either side count as wrong on start/end and are excluded from the
// conditional metrics. Direction coarse = same compass octant (pure-radial
// pairs compare by zoom sign); fine additionally requires the planar angle
// within eps_angle_fine and equal radial parts.
MetricsReport compute_dmr_metrics(const std::vector<TrajectoryScript>& predicted,
                                  const std::vector<TrajectoryScript>& ground_truth,
                                  const InversionTolerances& tol = {});

// Summed geodesic rotation distance: sum_i arccos((tr(Rg_i * Rt_i^T) - 1)/2).
double rot_err(const std::vector<Eigen::Matrix3d>& generated,
               const std::vector<Eigen::Matrix3d>& ground_truth);

// Summed Euclidean translation distance.
double trans_err(const std::vector<Eigen::Vector3d>& generated,
                 const std::vector<Eigen::Vector3d>& ground_truth);

// Peak signal-to-noise ratio in dB over all channels; +infinity when the
// images are identical.
double psnr(const ImageU8& a, const ImageU8& b, double max_value = 255.0);

// Mean structural similarity over 8x8 tiles (stride 8, truncated at the
// edges), K1=0.01, K2=0.03, computed on the luma channel.
double ssim(const ImageU8& a, const ImageU8& b, double max_value = 255.0);

}  // namespace camtraj
