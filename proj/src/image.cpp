#include "camtraj/image.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "camtraj/common.hpp"

namespace camtraj {

void write_pnm(const ImageU8& img, const std::string& path) {
    if (img.channels != 1 && img.channels != 3)
        throw ValidationError("PNM supports 1 or 3 channels");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << (img.channels == 3 ? "P6" : "P5") << '\n'
        << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()),
              static_cast<std::streamsize>(img.data.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

namespace {

int read_pnm_token(std::istream& in, const std::string& path) {
    // Skips whitespace and '#' comments, then reads one unsigned integer.
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#')
            while (c != EOF && c != '\n') c = in.get();
        c = in.get();
    }
    int value = -1;
    while (c != EOF && std::isdigit(c)) {
        if (value < 0) value = 0;
        value = value * 10 + (c - '0');
        c = in.get();
    }
    if (value < 0) throw ParseError("malformed PNM header in '" + path + "'");
    return value;
}

}  // namespace

ImageU8 read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    int channels;
    if (magic[0] == 'P' && magic[1] == '6')
        channels = 3;
    else if (magic[0] == 'P' && magic[1] == '5')
        channels = 1;
    else
        throw ParseError("unsupported PNM magic in '" + path + "'");
    const int width = read_pnm_token(in, path);
    const int height = read_pnm_token(in, path);
    const int maxval = read_pnm_token(in, path);
    if (maxval != 255) throw ParseError("only 8-bit PNM supported: '" + path + "'");
    ImageU8 img(width, height, channels);
    in.read(reinterpret_cast<char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.data.size()))
        throw ParseError("truncated PNM body in '" + path + "'");
    return img;
}

void write_depth_raw(const std::vector<float>& depth, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (float v : depth) {
        uint32_t bits = std::bit_cast<uint32_t>(v);
        const char bytes[4] = {char(bits >> 24), char((bits >> 16) & 0xff),
                               char((bits >> 8) & 0xff), char(bits & 0xff)};
        out.write(bytes, 4);
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace camtraj
