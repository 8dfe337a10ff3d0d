#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "camtraj/geometry.hpp"
#include "camtraj/image.hpp"

namespace camtraj {

struct ColoredPoint {
    double x = 0.0, y = 0.0, z = 0.0;
    uint8_t r = 0, g = 0, b = 0;
};

struct PointCloud {
    std::vector<ColoredPoint> points;
};

// PLY loader: ASCII or binary little-endian, vertex properties x,y,z
// (float/double) and red,green,blue (uchar) required; other vertex
// properties are skipped, elements after the vertices are ignored.
PointCloud load_ply(const std::string& path);
PointCloud ply_from_stream(std::istream& in, const std::string& name);

struct Projection {
    double u = 0.0, v = 0.0;  // pixel coordinates, unrounded
    double depth = 0.0;       // distance along the viewing direction
};

// Pinhole projection without bounds culling; empty when the point is behind
// the near plane (depth <= 1e-6).
std::optional<Projection> project_point(const Eigen::Vector3d& world, const Intrinsics& K,
                                        const Extrinsics& E);

// Full projection: additionally culled when the rounded pixel falls outside
// the image.
std::optional<Projection> project(const Eigen::Vector3d& world, const Intrinsics& K,
                                  const Extrinsics& E);

// rgb is black where nothing projects; mask is 1 where covered, 0 where
// unknown; depth is +infinity exactly where mask is 0. Depths are recorded
// at binary32 precision (the z-test key), widened to double.
struct RenderedFrame {
    ImageU8 rgb;                 // 3 channels
    ImageU8 mask;                // 1 channel, values 0/1
    std::vector<double> depth;   // row-major, +inf where unknown

    bool operator==(const RenderedFrame&) const = default;
};

// Every projected point writes its color into the (2*radius+1)^2 pixel
// square around its rounded position; the nearest depth wins, exact ties go
// to the lowest point index. The serial and OpenMP paths compare identical
// 64-bit (depth, index) keys, so their outputs are bit-identical.
RenderedFrame render_frame_serial(const PointCloud& cloud, const Intrinsics& K,
                                  const Extrinsics& E, int splat_radius = 0);
RenderedFrame render_frame_parallel(const PointCloud& cloud, const Intrinsics& K,
                                    const Extrinsics& E, int splat_radius = 0);
RenderedFrame render_frame(const PointCloud& cloud, const Intrinsics& K, const Extrinsics& E,
                           int splat_radius = 0);  // parallel when OpenMP is available

// One frame per pose, order preserved; frames render concurrently.
std::vector<RenderedFrame> render_trajectory(const PointCloud& cloud, const PoseSequence& poses,
                                             int splat_radius = 0);

// frame_%05d.ppm / mask_%05d.pgm (+ depth_%05d.raw when requested) in `dir`.
void write_frame_files(const RenderedFrame& frame, const std::string& dir, int index,
                       bool with_depth = false);

}  // namespace camtraj
