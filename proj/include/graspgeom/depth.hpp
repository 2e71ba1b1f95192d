#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "graspgeom/camera.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

// Per-pixel z-depth in meters; 0 marks an invalid pixel.
class DepthMap {
  public:
    DepthMap() = default;
    DepthMap(int width, int height, double fill = 0.0)
        : width_(width), height_(height), depth_(static_cast<std::size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return depth_.empty(); }

    double at(int u, int v) const { return depth_[static_cast<std::size_t>(v) * width_ + u]; }
    double& at(int u, int v) { return depth_[static_cast<std::size_t>(v) * width_ + u]; }
    bool valid(int u, int v) const { return at(u, v) > 0.0; }

    const std::vector<double>& data() const { return depth_; }
    std::vector<double>& data() { return depth_; }

    std::size_t valid_count() const {
        std::size_t n = 0;
        for (double d : depth_)
            if (d > 0.0) ++n;
        return n;
    }

  private:
    int width_ = 0, height_ = 0;
    std::vector<double> depth_;
};

// Per-pixel unit normals with a validity mask.
class NormalMap {
  public:
    NormalMap() = default;
    NormalMap(int width, int height)
        : width_(width), height_(height),
          normals_(static_cast<std::size_t>(width) * height),
          valid_(static_cast<std::size_t>(width) * height, 0) {}

    int width() const { return width_; }
    int height() const { return height_; }

    const Vec3& at(int u, int v) const { return normals_[static_cast<std::size_t>(v) * width_ + u]; }
    bool valid(int u, int v) const { return valid_[static_cast<std::size_t>(v) * width_ + u] != 0; }

    void set(int u, int v, const Vec3& n) {
        const std::size_t i = static_cast<std::size_t>(v) * width_ + u;
        normals_[i] = n;
        valid_[i] = 1;
    }

  private:
    int width_ = 0, height_ = 0;
    std::vector<Vec3> normals_;
    std::vector<std::uint8_t> valid_;
};

struct NearestSurfacePoint {
    Pixel pixel;       // integer coordinates of the winning depth pixel
    Vec3 point;        // its back-projection
    double distance = std::numeric_limits<double>::infinity();
};

// Exhaustive nearest neighbor over the back-projected cloud of every valid
// pixel; ties broken by row-major pixel order. This scan IS the contract:
// any accelerated variant must return the identical pixel.
inline NearestSurfacePoint nearest_surface_point(const Vec3& P, const DepthMap& depth,
                                                 const PinholeCamera& cam) {
    if (depth.empty()) throw EmptyDepthMap();
    NearestSurfacePoint best;
    bool found = false;
    for (int v = 0; v < depth.height(); ++v) {
        for (int u = 0; u < depth.width(); ++u) {
            const double d = depth.at(u, v);
            if (d <= 0.0) continue;
            const Vec3 q{(u - cam.cx) / cam.fx * d, (v - cam.cy) / cam.fy * d, d};
            const double dist2 = squared_norm(q - P);
            if (!found || dist2 < best.distance) {
                best.pixel = {static_cast<double>(u), static_cast<double>(v)};
                best.point = q;
                best.distance = dist2;
                found = true;
            }
        }
    }
    if (!found) throw EmptyDepthMap();
    best.distance = std::sqrt(best.distance);
    return best;
}

inline Pixel nearest_surface_pixel(const Vec3& P, const DepthMap& depth, const PinholeCamera& cam) {
    return nearest_surface_point(P, depth, cam).pixel;
}

}  // namespace graspgeom
