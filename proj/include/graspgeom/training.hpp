#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "graspgeom/camera.hpp"
#include "graspgeom/depth.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/image.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

struct Heatmap {
    int width = 0, height = 0;
    std::vector<double> values;  // row-major, in [0, 1]

    Heatmap() = default;
    Heatmap(int w, int h) : width(w), height(h), values(static_cast<std::size_t>(w) * h, 0.0) {}

    double at(int u, int v) const { return values[static_cast<std::size_t>(v) * width + u]; }
};

// Unnormalized Gaussian bump per keypoint, composed per pixel by max (the
// convention of the heatmap-regression target family). Off-image keypoints
// contribute whatever tail lands inside.
inline Heatmap make_heatmap(const std::vector<Pixel>& keypoints, int width, int height, double sigma) {
    if (sigma <= 0.0) throw SchemaError("heatmap: sigma must be positive");
    Heatmap hm(width, height);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (const Pixel& k : keypoints) {
        for (int v = 0; v < height; ++v) {
            for (int u = 0; u < width; ++u) {
                const double du = u - k.u;
                const double dv = v - k.v;
                const double g = std::exp(-(du * du + dv * dv) * inv);
                double& cell = hm.values[static_cast<std::size_t>(v) * width + u];
                cell = std::max(cell, g);
            }
        }
    }
    return hm;
}

// Six-channel crop: standardized RGB stacked with raw normal xyz.
// Spatial dims are (2r+1) squared for interior keypoints, clipped at borders.
struct CropTensor {
    int width = 0, height = 0;
    std::vector<double> data;  // row-major HWC, 6 channels
    Pixel source_keypoint;
    int source_radius = 0;

    CropTensor() = default;
    CropTensor(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 6, 0.0) {}

    double at(int u, int v, int ch) const {
        return data[(static_cast<std::size_t>(v) * width + u) * 6 + ch];
    }
    double& at(int u, int v, int ch) {
        return data[(static_cast<std::size_t>(v) * width + u) * 6 + ch];
    }
};

// Crops the window [u-r, u+r] x [v-r, v+r] from both maps, standardizes each
// RGB channel over the crop (zero-variance channels become zeros) and stacks
// the normal channels unchanged. Invalid normals contribute zeros.
inline CropTensor crop_pair(const ImageRGB8& rgb, const NormalMap& normals, const Pixel& p, int r) {
    if (r < 1) throw SchemaError("crop: radius must be >= 1");
    if (rgb.width != normals.width() || rgb.height != normals.height())
        throw SchemaError("crop: RGB and normal map dimensions differ");
    const int uc = static_cast<int>(std::lround(p.u));
    const int vc = static_cast<int>(std::lround(p.v));
    const int u0 = std::max(0, uc - r), u1 = std::min(rgb.width - 1, uc + r);
    const int v0 = std::max(0, vc - r), v1 = std::min(rgb.height - 1, vc + r);
    if (u0 > u1 || v0 > v1) throw DegenerateWindow();

    CropTensor t(u1 - u0 + 1, v1 - v0 + 1);
    t.source_keypoint = p;
    t.source_radius = r;

    for (int ch = 0; ch < 3; ++ch) {
        double mean = 0.0;
        for (int v = v0; v <= v1; ++v)
            for (int u = u0; u <= u1; ++u) mean += rgb.at(u, v, ch) / 255.0;
        const double n = static_cast<double>(t.width) * t.height;
        mean /= n;
        double var = 0.0;
        for (int v = v0; v <= v1; ++v)
            for (int u = u0; u <= u1; ++u) {
                const double d = rgb.at(u, v, ch) / 255.0 - mean;
                var += d * d;
            }
        const double sd = std::sqrt(var / n);
        for (int v = v0; v <= v1; ++v)
            for (int u = u0; u <= u1; ++u)
                t.at(u - u0, v - v0, ch) = sd > 1e-12 ? (rgb.at(u, v, ch) / 255.0 - mean) / sd : 0.0;
    }
    for (int v = v0; v <= v1; ++v)
        for (int u = u0; u <= u1; ++u) {
            const Vec3 nrm = normals.valid(u, v) ? normals.at(u, v) : Vec3{};
            t.at(u - u0, v - v0, 3) = nrm.x;
            t.at(u - u0, v - v0, 4) = nrm.y;
            t.at(u - u0, v - v0, 5) = nrm.z;
        }
    return t;
}

namespace detail {

// Clamped bilinear lookup at pixel-center coordinates.
inline double bilinear(const CropTensor& t, double gx, double gy, int ch) {
    gx = std::clamp(gx, 0.0, static_cast<double>(t.width - 1));
    gy = std::clamp(gy, 0.0, static_cast<double>(t.height - 1));
    const int x0 = static_cast<int>(gx);
    const int y0 = static_cast<int>(gy);
    const int x1 = std::min(x0 + 1, t.width - 1);
    const int y1 = std::min(y0 + 1, t.height - 1);
    const double fx = gx - x0;
    const double fy = gy - y0;
    return t.at(x0, y0, ch) * (1 - fx) * (1 - fy) + t.at(x1, y0, ch) * fx * (1 - fy) +
           t.at(x0, y1, ch) * (1 - fx) * fy + t.at(x1, y1, ch) * fx * fy;
}

}  // namespace detail

// Bilinear region alignment of the whole crop onto an out x out grid. Each
// output cell averages an n x n grid of bilinear samples inside its source
// sub-window, n = ceil(bin size) per axis, so the 1:1 geometry degenerates to
// an exact copy and constants are preserved exactly.
inline CropTensor roi_align(const CropTensor& t, int out = 112) {
    if (t.width < 1 || t.height < 1) throw DegenerateWindow();
    if (out < 1) throw SchemaError("roi_align: output size must be >= 1");
    CropTensor r(out, out);
    r.source_keypoint = t.source_keypoint;
    r.source_radius = t.source_radius;
    const double bw = static_cast<double>(t.width) / out;
    const double bh = static_cast<double>(t.height) / out;
    const int nx = std::max(1, static_cast<int>(std::ceil(bw)));
    const int ny = std::max(1, static_cast<int>(std::ceil(bh)));
    const double wsum = 1.0 / (nx * ny);
    for (int i = 0; i < out; ++i) {
        for (int j = 0; j < out; ++j) {
            for (int ch = 0; ch < 6; ++ch) {
                double acc = 0.0;
                for (int sy = 0; sy < ny; ++sy) {
                    const double gy = (i + (sy + 0.5) / ny) * bh - 0.5;
                    for (int sx = 0; sx < nx; ++sx) {
                        const double gx = (j + (sx + 0.5) / nx) * bw - 0.5;
                        acc += detail::bilinear(t, gx, gy, ch);
                    }
                }
                r.at(j, i, ch) = acc * wsum;
            }
        }
    }
    return r;
}

// Per-pixel normal from central differences of the back-projected cloud,
// oriented toward the camera. Pixels lacking a valid 4-neighborhood are
// marked invalid.
inline NormalMap normals_from_depth(const DepthMap& depth, const PinholeCamera& cam) {
    NormalMap nm(depth.width(), depth.height());
    auto cloud = [&](int u, int v) {
        const double d = depth.at(u, v);
        return Vec3{(u - cam.cx) / cam.fx * d, (v - cam.cy) / cam.fy * d, d};
    };
    for (int v = 1; v + 1 < depth.height(); ++v) {
        for (int u = 1; u + 1 < depth.width(); ++u) {
            if (!depth.valid(u, v) || !depth.valid(u - 1, v) || !depth.valid(u + 1, v) ||
                !depth.valid(u, v - 1) || !depth.valid(u, v + 1))
                continue;
            const Vec3 du = cloud(u + 1, v) - cloud(u - 1, v);
            const Vec3 dv = cloud(u, v + 1) - cloud(u, v - 1);
            Vec3 n = cross(du, dv);
            const double len = norm(n);
            if (len < 1e-15) continue;
            n = n / len;
            if (dot(n, cloud(u, v)) > 0.0) n = -n;
            nm.set(u, v, n);
        }
    }
    return nm;
}

}  // namespace graspgeom
