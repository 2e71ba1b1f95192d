#pragma once

// Shared generators and independent oracle implementations for the test
// suites. Oracles deliberately re-derive results through a different route
// than the library code they check.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "graspgeom/camera.hpp"
#include "graspgeom/collision.hpp"
#include "graspgeom/mesh.hpp"
#include "graspgeom/parallel.hpp"
#include "graspgeom/training.hpp"
#include "graspgeom/transform.hpp"
#include "graspgeom/vec3.hpp"

namespace testutil {

using namespace graspgeom;

inline constexpr double kPi = std::numbers::pi;

// Max absolute entry difference; resolves agreement far below the ~1e-8
// floor of the acos-based geodesic angle.
inline double mat_gap(const Mat3& a, const Mat3& b) {
    double g = 0.0;
    for (int i = 0; i < 9; ++i) g = std::max(g, std::abs(a.m[i] - b.m[i]));
    return g;
}

// ---- random generation ----

inline Vec3 random_unit(Rng& rng) { return rng.unit_vector(); }

inline Mat3 random_rotation(Rng& rng) {
    // Uniform rotation via a random axis and angle (sufficient for tests).
    const Vec3 axis = rng.unit_vector();
    const double angle = rng.uniform(0.0, 2.0 * kPi);
    return axis_angle(UnitVec3::from(axis), angle);
}

inline RigidTransform random_transform(Rng& rng, const std::string& from, const std::string& to,
                                       double t_range = 1.0) {
    return RigidTransform(random_rotation(rng),
                          Vec3{rng.uniform(-t_range, t_range), rng.uniform(-t_range, t_range),
                               rng.uniform(-t_range, t_range)},
                          from, to);
}

// Axis not too close to vertical plus an angle strictly inside the feasible
// band |cos(phi)| <= s, so every constraint stays well conditioned.
struct FeasibleAxisAngle {
    UnitVec3 n_x;
    double phi;
};

inline FeasibleAxisAngle random_feasible_axis_angle(Rng& rng, double margin = 1e-3) {
    for (;;) {
        const Vec3 ax = rng.unit_vector();
        const double s = std::sqrt(std::max(0.0, 1.0 - ax.z * ax.z));
        if (s < 0.05) continue;
        const double c = rng.uniform(-(s - margin * s), s - margin * s);
        return {UnitVec3::from(ax), std::acos(std::clamp(c, -1.0, 1.0))};
    }
}

// ---- raycast oracle: plane intersection + inside test via signed areas ----

inline std::optional<double> ray_triangle_plane_oracle(const Vec3& origin, const Vec3& dir,
                                                       const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 n = cross(b - a, c - a);
    const double denom = dot(n, dir);
    if (std::abs(denom) < 1e-14) return std::nullopt;
    const double t = dot(n, a - origin) / denom;
    const Vec3 p = origin + dir * t;
    // Inside iff every edge cross product points with the face normal.
    const double s0 = dot(cross(b - a, p - a), n);
    const double s1 = dot(cross(c - b, p - b), n);
    const double s2 = dot(cross(a - c, p - c), n);
    const double tol = -1e-12 * squared_norm(n);
    if (s0 < tol || s1 < tol || s2 < tol) return std::nullopt;
    return t;
}

inline std::optional<RayHit> raycast_oracle(const TriangleMesh& mesh, const Vec3& origin,
                                            const Vec3& dir, double eps = 1e-6) {
    RayHit best;
    const auto& vs = mesh.vertices();
    for (std::size_t i = 0; i < mesh.faces().size(); ++i) {
        const Triangle& f = mesh.faces()[i];
        const auto t = ray_triangle_plane_oracle(origin, dir, vs[f.a], vs[f.b], vs[f.c]);
        if (t && *t > eps && *t < best.distance) {
            best.distance = *t;
            best.face = static_cast<int>(i);
        }
    }
    if (best.face < 0) return std::nullopt;
    best.point = origin + dir * best.distance;
    return best;
}

// ---- force closure oracle: literal angle comparison ----

inline bool force_closure_oracle(const Vec3& p1, const Vec3& v1, const Vec3& p2, const Vec3& v2,
                                 double mu) {
    const double cone = std::atan(mu);
    const double a1 = angle_between(p2 - p1, -v1);
    const double a2 = angle_between(p1 - p2, -v2);
    return a1 <= cone && a2 <= cone;
}

// ---- OBB-triangle oracle: projection intervals on all 13 axes ----

inline bool obb_triangle_oracle(const Obb& box, const Vec3& a, const Vec3& b, const Vec3& c) {
    std::vector<Vec3> axes;
    for (int i = 0; i < 3; ++i) axes.push_back(box.R.col(i));
    const Vec3 n = cross(b - a, c - a);
    if (squared_norm(n) > 1e-24) axes.push_back(n);
    const Vec3 edges[3] = {b - a, c - b, a - c};
    for (const Vec3& e : edges)
        for (int i = 0; i < 3; ++i) {
            const Vec3 ax = cross(e, box.R.col(i));
            if (squared_norm(ax) > 1e-24) axes.push_back(ax);
        }

    // Box corners, explicitly.
    std::vector<Vec3> corners;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1})
                corners.push_back(box.center + box.R * Vec3{sx * box.half.x, sy * box.half.y,
                                                            sz * box.half.z});

    for (const Vec3& ax : axes) {
        double blo = 1e300, bhi = -1e300;
        for (const Vec3& q : corners) {
            const double p = dot(ax, q);
            blo = std::min(blo, p);
            bhi = std::max(bhi, p);
        }
        double tlo = 1e300, thi = -1e300;
        for (const Vec3& q : {a, b, c}) {
            const double p = dot(ax, q);
            tlo = std::min(tlo, p);
            thi = std::max(thi, p);
        }
        if (bhi < tlo || thi < blo) return false;
    }
    return true;
}

// ---- RoI Align oracle: direct evaluation of the pinned sampling scheme ----

inline double bilinear_clamped_oracle(const CropTensor& t, double gx, double gy, int ch) {
    gx = std::min(std::max(gx, 0.0), static_cast<double>(t.width - 1));
    gy = std::min(std::max(gy, 0.0), static_cast<double>(t.height - 1));
    const int x0 = static_cast<int>(std::floor(gx));
    const int y0 = static_cast<int>(std::floor(gy));
    const int x1 = std::min(x0 + 1, t.width - 1);
    const int y1 = std::min(y0 + 1, t.height - 1);
    const double fx = gx - x0, fy = gy - y0;
    const double top = t.at(x0, y0, ch) + fx * (t.at(x1, y0, ch) - t.at(x0, y0, ch));
    const double bot = t.at(x0, y1, ch) + fx * (t.at(x1, y1, ch) - t.at(x0, y1, ch));
    return top + fy * (bot - top);
}

inline double roi_align_oracle_cell(const CropTensor& t, int out, int i, int j, int ch) {
    const double bw = static_cast<double>(t.width) / out;
    const double bh = static_cast<double>(t.height) / out;
    const int nx = std::max(1, static_cast<int>(std::ceil(bw)));
    const int ny = std::max(1, static_cast<int>(std::ceil(bh)));
    double acc = 0.0;
    for (int sy = 0; sy < ny; ++sy)
        for (int sx = 0; sx < nx; ++sx)
            acc += bilinear_clamped_oracle(t, (j + (sx + 0.5) / nx) * bw - 0.5,
                                           (i + (sy + 0.5) / ny) * bh - 0.5, ch);
    return acc / (nx * ny);
}

}  // namespace testutil
