#pragma once

#include <string>

#include "graspgeom/errors.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

// Real-valued pixel coordinates. Integer values address the pixel grid directly.
struct Pixel {
    double u = 0.0, v = 0.0;

    constexpr bool operator==(const Pixel& o) const { return u == o.u && v == o.v; }
};

// Pinhole model, camera frame x-right / y-down / z-forward.
struct PinholeCamera {
    double fx = 0.0, fy = 0.0;
    double cx = 0.0, cy = 0.0;
    int width = 0, height = 0;

    void validate() const {
        if (fx <= 0.0 || fy <= 0.0) throw SchemaError("camera: focal lengths must be positive");
        if (width <= 0 || height <= 0) throw SchemaError("camera: image dimensions must be positive");
        if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height)
            throw SchemaError("camera: principal point outside the image");
    }

    bool contains(const Pixel& p) const {
        return p.u >= 0.0 && p.u < width && p.v >= 0.0 && p.v < height;
    }
};

// No clamping to image bounds; the caller decides what off-image means.
inline Pixel project(const Vec3& P, const PinholeCamera& cam) {
    if (P.z <= 0.0) throw NonPositiveDepth(P.z);
    return {cam.fx * P.x / P.z + cam.cx, cam.fy * P.y / P.z + cam.cy};
}

inline Vec3 backproject(const Pixel& p, double depth, const PinholeCamera& cam) {
    if (depth <= 0.0) throw NonPositiveDepth(depth);
    return {(p.u - cam.cx) / cam.fx * depth, (p.v - cam.cy) / cam.fy * depth, depth};
}

}  // namespace graspgeom
