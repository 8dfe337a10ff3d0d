#include "camtraj/render.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "camtraj/common.hpp"

namespace camtraj {

namespace {

enum class PlyFormat { ascii, binary_le };

struct PlyProperty {
    std::string name;
    std::string type;
    size_t size = 0;
};

size_t ply_type_size(const std::string& type) {
    if (type == "char" || type == "uchar" || type == "int8" || type == "uint8") return 1;
    if (type == "short" || type == "ushort" || type == "int16" || type == "uint16") return 2;
    if (type == "int" || type == "uint" || type == "int32" || type == "uint32" ||
        type == "float" || type == "float32")
        return 4;
    if (type == "double" || type == "float64" || type == "int64" || type == "uint64") return 8;
    throw ParseError("unsupported PLY property type '" + type + "'");
}

double read_binary_scalar(std::istream& in, const std::string& type) {
    unsigned char buf[8];
    const size_t size = ply_type_size(type);
    in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(size));
    if (!in) throw ParseError("truncated PLY body");
    uint64_t raw = 0;
    for (size_t i = 0; i < size; ++i) raw |= uint64_t(buf[i]) << (8 * i);  // little-endian
    if (type == "float" || type == "float32")
        return double(std::bit_cast<float>(static_cast<uint32_t>(raw)));
    if (type == "double" || type == "float64") return std::bit_cast<double>(raw);
    if (type == "char" || type == "int8") return double(int8_t(raw));
    if (type == "short" || type == "int16") return double(int16_t(raw));
    if (type == "int" || type == "int32") return double(int32_t(raw));
    return double(raw);  // unsigned types
}

}  // namespace

PointCloud ply_from_stream(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty PLY file '" + name + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "ply") throw ParseError("'" + name + "' is not a PLY file");

    PlyFormat format = PlyFormat::ascii;
    bool format_seen = false;
    struct Element {
        std::string name;
        size_t count = 0;
        std::vector<PlyProperty> properties;
        bool has_list = false;
    };
    std::vector<Element> elements;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "comment" || word.empty()) continue;
        if (word == "format") {
            std::string fmt, version;
            ls >> fmt >> version;
            if (fmt == "ascii")
                format = PlyFormat::ascii;
            else if (fmt == "binary_little_endian")
                format = PlyFormat::binary_le;
            else
                throw ParseError("unsupported PLY format '" + fmt + "'");
            format_seen = true;
        } else if (word == "element") {
            Element e;
            ls >> e.name >> e.count;
            elements.push_back(std::move(e));
        } else if (word == "property") {
            if (elements.empty()) throw ParseError("PLY property before any element");
            std::string type;
            ls >> type;
            PlyProperty p;
            if (type == "list") {
                std::string count_type, value_type;
                ls >> count_type >> value_type >> p.name;
                p.type = "list:" + count_type + ":" + value_type;
                elements.back().has_list = true;
            } else {
                p.type = type;
                p.size = ply_type_size(type);
                ls >> p.name;
            }
            elements.back().properties.push_back(std::move(p));
        } else if (word == "end_header") {
            break;
        } else if (word == "obj_info") {
            continue;
        } else {
            throw ParseError("malformed PLY header line '" + line + "'");
        }
    }
    if (!format_seen) throw ParseError("PLY header missing format line");

    auto vertex_it = std::find_if(elements.begin(), elements.end(),
                                  [](const Element& e) { return e.name == "vertex"; });
    if (vertex_it == elements.end()) throw ParseError("PLY file has no vertex element");

    // Skip any elements declared before the vertices.
    for (auto it = elements.begin(); it != vertex_it; ++it) {
        if (format == PlyFormat::ascii) {
            for (size_t i = 0; i < it->count; ++i)
                if (!std::getline(in, line)) throw ParseError("truncated PLY body");
        } else {
            if (it->has_list)
                throw ParseError("cannot skip binary list element '" + it->name +
                                 "' preceding vertices");
            size_t row = 0;
            for (const auto& p : it->properties) row += p.size;
            in.ignore(static_cast<std::streamsize>(row * it->count));
        }
    }

    const Element& vertex = *vertex_it;
    if (vertex.has_list) throw ParseError("list properties in vertex element unsupported");

    int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
    for (size_t i = 0; i < vertex.properties.size(); ++i) {
        const std::string& n = vertex.properties[i].name;
        if (n == "x") ix = int(i);
        else if (n == "y") iy = int(i);
        else if (n == "z") iz = int(i);
        else if (n == "red") ir = int(i);
        else if (n == "green") ig = int(i);
        else if (n == "blue") ib = int(i);
    }
    for (auto [idx, n] : {std::pair{ix, "x"}, {iy, "y"}, {iz, "z"},
                          {ir, "red"}, {ig, "green"}, {ib, "blue"}})
        if (idx < 0)
            throw ParseError("PLY vertex element missing property '" + std::string(n) + "'");

    PointCloud cloud;
    cloud.points.reserve(vertex.count);
    std::vector<double> row(vertex.properties.size());
    for (size_t v = 0; v < vertex.count; ++v) {
        if (format == PlyFormat::ascii) {
            if (!std::getline(in, line)) throw ParseError("truncated PLY body");
            std::istringstream ls(line);
            for (size_t p = 0; p < row.size(); ++p)
                if (!(ls >> row[p]))
                    throw ParseError("malformed PLY vertex line " + std::to_string(v + 1));
        } else {
            for (size_t p = 0; p < row.size(); ++p)
                row[p] = read_binary_scalar(in, vertex.properties[p].type);
        }
        ColoredPoint pt;
        pt.x = row[ix];
        pt.y = row[iy];
        pt.z = row[iz];
        pt.r = static_cast<uint8_t>(std::clamp(row[ir], 0.0, 255.0));
        pt.g = static_cast<uint8_t>(std::clamp(row[ig], 0.0, 255.0));
        pt.b = static_cast<uint8_t>(std::clamp(row[ib], 0.0, 255.0));
        cloud.points.push_back(pt);
    }
    return cloud;
}

PointCloud load_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return ply_from_stream(in, path);
}

namespace {

constexpr double kNearPlane = 1e-6;

}  // namespace

std::optional<Projection> project_point(const Eigen::Vector3d& world, const Intrinsics& K,
                                        const Extrinsics& E) {
    const Eigen::Vector3d cam = E.R * world + E.t;
    const double depth = -cam.z();  // camera looks along -z
    if (!(depth > kNearPlane)) return std::nullopt;
    Projection p;
    p.depth = depth;
    p.u = K.cx + K.fx * (cam.x() / depth);
    p.v = K.cy - K.fy * (cam.y() / depth);
    return p;
}

std::optional<Projection> project(const Eigen::Vector3d& world, const Intrinsics& K,
                                  const Extrinsics& E) {
    auto p = project_point(world, K, E);
    if (!p) return std::nullopt;
    const long px = std::llround(p->u);
    const long py = std::llround(p->v);
    if (px < 0 || px >= K.width || py < 0 || py >= K.height) return std::nullopt;
    return p;
}

namespace {

constexpr uint64_t kEmptyKey = ~0ull;

// Depth-major z-test key: positive binary32 depths order as integers, the
// low word breaks exact ties by point index.
inline uint64_t make_key(double depth, uint32_t index) {
    const uint32_t bits = std::bit_cast<uint32_t>(static_cast<float>(depth));
    return (uint64_t(bits) << 32) | index;
}

struct SplatBox {
    int x0, x1, y0, y1;  // inclusive pixel bounds
};

inline std::optional<SplatBox> splat_box(const Projection& p, const Intrinsics& K, int radius) {
    const long cx = std::llround(p.u);
    const long cy = std::llround(p.v);
    if (cx < 0 || cx >= K.width || cy < 0 || cy >= K.height) return std::nullopt;
    SplatBox box;
    box.x0 = static_cast<int>(std::max<long>(0, cx - radius));
    box.x1 = static_cast<int>(std::min<long>(K.width - 1, cx + radius));
    box.y0 = static_cast<int>(std::max<long>(0, cy - radius));
    box.y1 = static_cast<int>(std::min<long>(K.height - 1, cy + radius));
    return box;
}

RenderedFrame frame_from_keys(const std::vector<uint64_t>& keys, const PointCloud& cloud,
                              int width, int height) {
    RenderedFrame frame;
    frame.rgb = ImageU8(width, height, 3);
    frame.mask = ImageU8(width, height, 1);
    frame.depth.assign(size_t(width) * height, std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < keys.size(); ++i) {
        if (keys[i] == kEmptyKey) continue;
        const uint32_t index = static_cast<uint32_t>(keys[i] & 0xffffffffu);
        const float depth = std::bit_cast<float>(static_cast<uint32_t>(keys[i] >> 32));
        const ColoredPoint& pt = cloud.points[index];
        frame.rgb.data[i * 3 + 0] = pt.r;
        frame.rgb.data[i * 3 + 1] = pt.g;
        frame.rgb.data[i * 3 + 2] = pt.b;
        frame.mask.data[i] = 1;
        frame.depth[i] = double(depth);
    }
    return frame;
}

void check_render_args(const PointCloud& cloud, const Intrinsics& K, int splat_radius) {
    if (cloud.points.empty()) throw ValidationError("cannot render an empty point cloud");
    if (K.width < 1 || K.height < 1) throw ValidationError("zero-size image");
    if (splat_radius < 0) throw ValidationError("negative splat radius");
    if (cloud.points.size() > 0xffffffffull)
        throw ValidationError("point cloud exceeds 2^32 points");
}

}  // namespace

RenderedFrame render_frame_serial(const PointCloud& cloud, const Intrinsics& K,
                                  const Extrinsics& E, int splat_radius) {
    check_render_args(cloud, K, splat_radius);
    std::vector<uint64_t> keys(size_t(K.width) * K.height, kEmptyKey);
    for (size_t i = 0; i < cloud.points.size(); ++i) {
        const ColoredPoint& pt = cloud.points[i];
        const auto proj = project_point({pt.x, pt.y, pt.z}, K, E);
        if (!proj) continue;
        const auto box = splat_box(*proj, K, splat_radius);
        if (!box) continue;
        const uint64_t key = make_key(proj->depth, static_cast<uint32_t>(i));
        for (int y = box->y0; y <= box->y1; ++y)
            for (int x = box->x0; x <= box->x1; ++x) {
                uint64_t& slot = keys[size_t(y) * K.width + x];
                if (key < slot) slot = key;
            }
    }
    return frame_from_keys(keys, cloud, K.width, K.height);
}

RenderedFrame render_frame_parallel(const PointCloud& cloud, const Intrinsics& K,
                                    const Extrinsics& E, int splat_radius) {
    check_render_args(cloud, K, splat_radius);
    std::vector<uint64_t> keys(size_t(K.width) * K.height, kEmptyKey);
    const long n = static_cast<long>(cloud.points.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        const ColoredPoint& pt = cloud.points[size_t(i)];
        const auto proj = project_point({pt.x, pt.y, pt.z}, K, E);
        if (!proj) continue;
        const auto box = splat_box(*proj, K, splat_radius);
        if (!box) continue;
        const uint64_t key = make_key(proj->depth, static_cast<uint32_t>(i));
        for (int y = box->y0; y <= box->y1; ++y)
            for (int x = box->x0; x <= box->x1; ++x) {
                std::atomic_ref<uint64_t> slot(keys[size_t(y) * K.width + x]);
                uint64_t cur = slot.load(std::memory_order_relaxed);
                while (key < cur &&
                       !slot.compare_exchange_weak(cur, key, std::memory_order_relaxed)) {
                }
            }
    }
    return frame_from_keys(keys, cloud, K.width, K.height);
}

RenderedFrame render_frame(const PointCloud& cloud, const Intrinsics& K, const Extrinsics& E,
                           int splat_radius) {
#ifdef _OPENMP
    return render_frame_parallel(cloud, K, E, splat_radius);
#else
    return render_frame_serial(cloud, K, E, splat_radius);
#endif
}

std::vector<RenderedFrame> render_trajectory(const PointCloud& cloud, const PoseSequence& poses,
                                             int splat_radius) {
    std::vector<RenderedFrame> frames(poses.frames.size());
    const long n = static_cast<long>(poses.frames.size());
    // Frames are independent; each one uses the serial kernel so thread
    // count cannot affect the output.
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
        frames[size_t(i)] = render_frame_serial(cloud, poses.frames[size_t(i)].intrinsics,
                                                poses.frames[size_t(i)].extrinsics, splat_radius);
    return frames;
}

void write_frame_files(const RenderedFrame& frame, const std::string& dir, int index,
                       bool with_depth) {
    char name[64];
    std::snprintf(name, sizeof(name), "/frame_%05d.ppm", index);
    write_pnm(frame.rgb, dir + name);
    std::snprintf(name, sizeof(name), "/mask_%05d.pgm", index);
    ImageU8 mask_vis = frame.mask;
    for (auto& v : mask_vis.data) v = v ? 255 : 0;
    write_pnm(mask_vis, dir + name);
    if (with_depth) {
        std::snprintf(name, sizeof(name), "/depth_%05d.raw", index);
        std::vector<float> depth32(frame.depth.begin(), frame.depth.end());
        write_depth_raw(depth32, dir + name);
    }
}

}  // namespace camtraj
