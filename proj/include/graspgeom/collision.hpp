#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "graspgeom/grasp.hpp"
#include "graspgeom/mesh.hpp"
#include "graspgeom/transform.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

// Parallel-jaw hand as three oriented boxes: two fingers plus a palm bar.
// The jaw stroke comes from the grasp width, everything else from here.
struct GripperModel {
    double finger_length = 0.05;     // along the approach axis n_z (m)
    double finger_thickness = 0.018; // finger cross-section (m)
    double palm_depth = 0.04;        // palm extent behind the fingers (m)
};

struct Obb {
    Vec3 center;
    Vec3 half;  // half extents along local axes
    Mat3 R;     // columns are the local axes (world-from-local)
};

// Boxes in the grasp frame: x = closure axis, y = gripper-plane normal,
// z = approach axis. Fingertips reach the contact line (local z = 0), the
// hand body extends backwards along -z.
inline std::array<Obb, 3> gripper_boxes(const GraspSE3& pose, const GripperModel& g, double stroke) {
    const double ht = g.finger_thickness * 0.5;
    const double hl = g.finger_length * 0.5;
    const double finger_x = stroke * 0.5 + ht;  // finger centers, just outside the jaws
    auto make = [&](double lx, double ly, double lz, const Vec3& hhalf) {
        Obb box;
        box.center = pose.R * Vec3{lx, ly, lz} + pose.t;
        box.half = hhalf;
        box.R = pose.R;
        return box;
    };
    const Obb finger_a = make(finger_x, 0.0, -hl, {ht, ht, hl});
    const Obb finger_b = make(-finger_x, 0.0, -hl, {ht, ht, hl});
    const Obb palm = make(0.0, 0.0, -g.finger_length - g.palm_depth * 0.5,
                          {finger_x + ht, ht, g.palm_depth * 0.5});
    return {finger_a, finger_b, palm};
}

// Separating-axis test between an OBB and a triangle (triangle moved into the
// box frame, then the 3 + 1 + 9 axis family). Touching counts as overlap.
inline bool obb_triangle_intersect(const Obb& box, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Mat3 Rt = box.R.transposed();
    const Vec3 v0 = Rt * (a - box.center);
    const Vec3 v1 = Rt * (b - box.center);
    const Vec3 v2 = Rt * (c - box.center);
    const Vec3& h = box.half;

    auto axis_separates = [&](const Vec3& axis) {
        const double r = h.x * std::abs(axis.x) + h.y * std::abs(axis.y) + h.z * std::abs(axis.z);
        const double p0 = dot(axis, v0), p1 = dot(axis, v1), p2 = dot(axis, v2);
        const double lo = std::min({p0, p1, p2});
        const double hi = std::max({p0, p1, p2});
        return lo > r || hi < -r;
    };

    // Box face normals.
    if (std::max({v0.x, v1.x, v2.x}) < -h.x || std::min({v0.x, v1.x, v2.x}) > h.x) return false;
    if (std::max({v0.y, v1.y, v2.y}) < -h.y || std::min({v0.y, v1.y, v2.y}) > h.y) return false;
    if (std::max({v0.z, v1.z, v2.z}) < -h.z || std::min({v0.z, v1.z, v2.z}) > h.z) return false;

    // Triangle plane.
    const Vec3 e0 = v1 - v0, e1 = v2 - v1, e2 = v0 - v2;
    const Vec3 n = cross(e0, e1);
    if (squared_norm(n) > 1e-24 && axis_separates(n)) return false;

    // Edge cross products; near-zero axes carry no information.
    const std::array<Vec3, 3> units = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    for (const Vec3& e : {e0, e1, e2})
        for (const Vec3& u : units) {
            const Vec3 axis = cross(e, u);
            if (squared_norm(axis) < 1e-24) continue;
            if (axis_separates(axis)) return false;
        }
    return true;
}

struct PosedMesh {
    const TriangleMesh* mesh = nullptr;
    RigidTransform pose;  // mesh frame -> common frame
};

// True iff no gripper primitive intersects any scene triangle (collision-free).
// Pose and scene must share one frame.
inline bool collision_check(const GraspSE3& grasp_pose, const GripperModel& gripper, double stroke,
                            const std::vector<PosedMesh>& scene) {
    const std::array<Obb, 3> boxes = gripper_boxes(grasp_pose, gripper, stroke);
    for (const PosedMesh& pm : scene) {
        if (!pm.mesh) continue;
        const auto& vs = pm.mesh->vertices();
        for (const Triangle& f : pm.mesh->faces()) {
            const Vec3 a = pm.pose.apply(vs[f.a]);
            const Vec3 b = pm.pose.apply(vs[f.b]);
            const Vec3 c = pm.pose.apply(vs[f.c]);
            for (const Obb& box : boxes)
                if (obb_triangle_intersect(box, a, b, c)) return false;
        }
    }
    return true;
}

}  // namespace graspgeom
