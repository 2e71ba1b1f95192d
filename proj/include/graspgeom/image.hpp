#pragma once

#include <cstdint>
#include <vector>

namespace graspgeom {

// 8-bit RGB image, row-major, interleaved channels.
struct ImageRGB8 {
    int width = 0, height = 0;
    std::vector<std::uint8_t> data;  // size = width * height * 3

    ImageRGB8() = default;
    ImageRGB8(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::uint8_t at(int u, int v, int ch) const {
        return data[(static_cast<std::size_t>(v) * width + u) * 3 + ch];
    }
    void set(int u, int v, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        const std::size_t i = (static_cast<std::size_t>(v) * width + u) * 3;
        data[i] = r;
        data[i + 1] = g;
        data[i + 2] = b;
    }
};

}  // namespace graspgeom
