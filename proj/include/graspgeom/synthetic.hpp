#pragma once

#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "graspgeom/camera.hpp"
#include "graspgeom/depth.hpp"
#include "graspgeom/mesh.hpp"
#include "graspgeom/parallel.hpp"
#include "graspgeom/transform.hpp"

namespace graspgeom {

// Icosphere with exact radial vertex normals; 20 * 4^subdivisions faces.
inline TriangleMesh make_icosphere(double radius, int subdivisions) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    for (Vec3& v : verts) v = normalized(v);
    std::vector<Triangle> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int i, int j) {
            const auto key = std::minmax(i, j);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            verts.push_back(normalized((verts[i] + verts[j]) * 0.5));
            const int idx = static_cast<int>(verts.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<Triangle> next;
        next.reserve(faces.size() * 4);
        for (const Triangle& f : faces) {
            const int ab = mid(f.a, f.b), bc = mid(f.b, f.c), ca = mid(f.c, f.a);
            next.push_back({f.a, ab, ca});
            next.push_back({f.b, bc, ab});
            next.push_back({f.c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    std::vector<Vec3> normals = verts;  // unit sphere: normal == position
    for (Vec3& v : verts) v = v * radius;
    return TriangleMesh(std::move(verts), std::move(faces), std::move(normals));
}

// Axis-aligned box centered at the origin, flat-shaded (no vertex normals).
inline TriangleMesh make_box(const Vec3& extents) {
    const double hx = extents.x * 0.5, hy = extents.y * 0.5, hz = extents.z * 0.5;
    std::vector<Vec3> v = {
        {-hx, -hy, -hz}, {hx, -hy, -hz}, {hx, hy, -hz}, {-hx, hy, -hz},
        {-hx, -hy, hz}, {hx, -hy, hz}, {hx, hy, hz}, {-hx, hy, hz}};
    std::vector<Triangle> f = {
        {0, 2, 1}, {0, 3, 2},  // -z
        {4, 5, 6}, {4, 6, 7},  // +z
        {0, 1, 5}, {0, 5, 4},  // -y
        {3, 6, 2}, {3, 7, 6},  // +y
        {1, 2, 6}, {1, 6, 5},  // +x
        {0, 4, 7}, {0, 7, 3}   // -x
    };
    return TriangleMesh(std::move(v), std::move(f));
}

inline TriangleMesh make_cube(double side) { return make_box({side, side, side}); }

// Horizontal quad (two triangles) of the given half size at height z.
inline TriangleMesh make_platform(double half_size, double z = 0.0) {
    std::vector<Vec3> v = {{-half_size, -half_size, z},
                           {half_size, -half_size, z},
                           {half_size, half_size, z},
                           {-half_size, half_size, z}};
    std::vector<Triangle> f = {{0, 1, 2}, {0, 2, 3}};
    return TriangleMesh(std::move(v), std::move(f));
}

// Ground-truth z-depth render of posed meshes: one ray per pixel center,
// nearest hit wins. Transforms map each mesh frame into the camera frame.
inline DepthMap render_depth(const std::vector<std::pair<const TriangleMesh*, RigidTransform>>& scene,
                             const PinholeCamera& cam, int jobs = 1) {
    DepthMap dm(cam.width, cam.height);
    // Pre-transform triangles into the camera frame.
    struct Tri {
        Vec3 a, b, c;
    };
    std::vector<Tri> tris;
    for (const auto& [mesh, T] : scene) {
        if (!mesh) continue;
        const auto& vs = mesh->vertices();
        for (const Triangle& f : mesh->faces())
            tris.push_back({T.apply(vs[f.a]), T.apply(vs[f.b]), T.apply(vs[f.c])});
    }
    parallel_for(static_cast<std::int64_t>(cam.height), jobs, [&](std::int64_t v) {
        for (int u = 0; u < cam.width; ++u) {
            const Vec3 dir_raw{(u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0};
            const double len = norm(dir_raw);
            const Vec3 dir = dir_raw / len;
            double best = std::numeric_limits<double>::infinity();
            for (const Tri& t : tris) {
                const auto hit = detail::ray_triangle(Vec3{}, dir, t.a, t.b, t.c);
                if (hit && *hit > 1e-9 && *hit < best) best = *hit;
            }
            if (std::isfinite(best)) dm.at(u, static_cast<int>(v)) = best * dir.z;
        }
    });
    return dm;
}

}  // namespace graspgeom
