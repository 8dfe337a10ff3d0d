#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace camtraj {

// Dense row-major 8-bit image, 1 or 3 channels.
struct ImageU8 {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<uint8_t> data;

    ImageU8() = default;
    ImageU8(int w, int h, int c, uint8_t fill = 0)
        : width(w), height(h), channels(c),
          data(static_cast<size_t>(w) * h * c, fill) {}

    uint8_t& at(int x, int y, int c = 0) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    uint8_t at(int x, int y, int c = 0) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    bool same_shape(const ImageU8& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }
    bool operator==(const ImageU8&) const = default;
};

// Binary PPM (P6, 3 channels) and PGM (P5, 1 channel).
void write_pnm(const ImageU8& img, const std::string& path);
ImageU8 read_pnm(const std::string& path);

// Raw big-endian 32-bit float dump, row-major, no header.
void write_depth_raw(const std::vector<float>& depth, const std::string& path);

}  // namespace camtraj
