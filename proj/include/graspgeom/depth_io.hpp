#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "graspgeom/depth.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/png_io.hpp"

namespace graspgeom {

// Default PNG depth quantization: one 16-bit unit is 0.1 mm.
inline constexpr double kDefaultDepthScale = 1e-4;

// 16-bit PNG depth: value = depth / scale, 0 = invalid, saturating at 65535.
inline void write_depth_png(const std::string& path, const DepthMap& depth,
                            double scale = kDefaultDepthScale) {
    std::vector<std::uint16_t> values(static_cast<std::size_t>(depth.width()) * depth.height(), 0);
    for (int v = 0; v < depth.height(); ++v)
        for (int u = 0; u < depth.width(); ++u) {
            const double d = depth.at(u, v);
            if (d <= 0.0) continue;
            const double q = std::round(d / scale);
            values[static_cast<std::size_t>(v) * depth.width() + u] =
                static_cast<std::uint16_t>(std::min(q, 65535.0));
        }
    write_png_gray16(path, depth.width(), depth.height(), values);
}

inline DepthMap read_depth_png(const std::string& path, double scale = kDefaultDepthScale) {
    int w = 0, h = 0;
    const std::vector<std::uint16_t> values = read_png_gray16(path, w, h);
    DepthMap dm(w, h);
    for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) {
            const std::uint16_t q = values[static_cast<std::size_t>(v) * w + u];
            if (q) dm.at(u, v) = q * scale;
        }
    return dm;
}

namespace detail {
inline constexpr char kDepthMagic[4] = {'G', 'G', 'D', 'M'};
}

// Raw float32 depth: 16-byte header {magic "GGDM", u32 width, u32 height,
// 4 reserved bytes}, then row-major little-endian float32 meters, 0 = invalid.
inline void write_depth_f32(const std::string& path, const DepthMap& depth) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    const std::uint32_t w = static_cast<std::uint32_t>(depth.width());
    const std::uint32_t h = static_cast<std::uint32_t>(depth.height());
    const char reserved[4] = {0, 0, 0, 0};
    out.write(detail::kDepthMagic, 4);
    out.write(reinterpret_cast<const char*>(&w), 4);
    out.write(reinterpret_cast<const char*>(&h), 4);
    out.write(reserved, 4);
    std::vector<float> row(depth.width());
    for (int v = 0; v < depth.height(); ++v) {
        for (int u = 0; u < depth.width(); ++u) row[u] = static_cast<float>(depth.at(u, v));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) throw IoError("write failed: " + path);
}

inline DepthMap read_depth_f32(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    char magic[4];
    std::uint32_t w = 0, h = 0;
    char reserved[4];
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&w), 4);
    in.read(reinterpret_cast<char*>(&h), 4);
    in.read(reserved, 4);
    if (!in || std::memcmp(magic, detail::kDepthMagic, 4) != 0)
        throw IoError("not a depth f32 file (bad magic): " + path);
    if (w == 0 || h == 0 || w > 1u << 20 || h > 1u << 20)
        throw IoError("implausible depth dimensions in " + path);
    DepthMap dm(static_cast<int>(w), static_cast<int>(h));
    std::vector<float> row(w);
    for (std::uint32_t v = 0; v < h; ++v) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (!in) throw IoError("truncated depth data in " + path);
        for (std::uint32_t u = 0; u < w; ++u) dm.at(static_cast<int>(u), static_cast<int>(v)) = row[u];
    }
    return dm;
}

// Dispatch on extension: .png (with scale) or .f32.
inline DepthMap read_depth(const std::string& path, double png_scale = kDefaultDepthScale) {
    auto ends_with = [&](const std::string& s) {
        return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with(".png")) return read_depth_png(path, png_scale);
    if (ends_with(".f32")) return read_depth_f32(path);
    throw IoError("unsupported depth format (want .png or .f32): " + path);
}

}  // namespace graspgeom
