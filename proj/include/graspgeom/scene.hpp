#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "graspgeom/camera.hpp"
#include "graspgeom/collision.hpp"
#include "graspgeom/config.hpp"
#include "graspgeom/depth.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/grasp.hpp"
#include "graspgeom/mesh.hpp"
#include "graspgeom/parallel.hpp"
#include "graspgeom/pose_recovery.hpp"
#include "graspgeom/sampling.hpp"

namespace graspgeom {

struct SceneObject {
    std::string name;
    std::string mesh_ref;
    TriangleMesh mesh;
    RigidTransform T_base_obj;  // object frame -> base
};

struct SceneView {
    std::string name;
    PinholeCamera camera;
    RigidTransform T_cam_base;  // base -> this camera frame
    std::string depth_ref;
};

struct Scene {
    std::vector<SceneObject> objects;
    std::vector<SceneObject> background;
    std::vector<SceneView> views;
    double depth_scale = 1e-4;  // meters per 16-bit PNG unit
    std::string base_dir;       // directory asset refs are relative to
};

// One view-level grasp label. The pose is the label pose: the pose implied by
// the stored fields (snapped keypoint included), so feeding the record back
// through recover_pose reproduces it.
struct AnnotationRecord {
    int view_index = 0;
    std::string grasp_id;
    GraspSE3 g_cam;
    Pixel keypoint;
    double d = 0.0;
    double w = 0.0;
    double phi = 0.0;
    UnitVec3 n_x_cam;
};

// Grasp poses from object frame into a camera frame via the composed
// transform T_cam<-obj = T_cam<-base T_base<-obj.
inline std::vector<GraspSE3> grasps_to_camera(const std::vector<GraspSE3>& grasps_obj,
                                              const RigidTransform& T_base_obj,
                                              const RigidTransform& T_cam_base) {
    const RigidTransform T_cam_obj = T_cam_base * T_base_obj;
    std::vector<GraspSE3> out;
    out.reserve(grasps_obj.size());
    for (const GraspSE3& g : grasps_obj) out.push_back(transform_grasp(T_cam_obj, g));
    return out;
}

// Mean pairwise cosine similarity of the valid normals in the window of
// half-width `radius` around p, remapped from [-1, 1] to [0, 1]. Windows with
// fewer than two valid normals score 1.
inline double normal_consistency(const NormalMap& normals, const Pixel& p, int radius) {
    const int uc = static_cast<int>(std::lround(p.u));
    const int vc = static_cast<int>(std::lround(p.v));
    const int u0 = std::max(0, uc - radius), u1 = std::min(normals.width() - 1, uc + radius);
    const int v0 = std::max(0, vc - radius), v1 = std::min(normals.height() - 1, vc + radius);
    if (u0 > u1 || v0 > v1) throw EmptyWindow();
    Vec3 sum;
    std::size_t n = 0;
    for (int v = v0; v <= v1; ++v)
        for (int u = u0; u <= u1; ++u) {
            if (!normals.valid(u, v)) continue;
            sum += normals.at(u, v);
            ++n;
        }
    if (n == 0) throw EmptyWindow();
    if (n == 1) return 1.0;
    // Sum over unordered pairs of unit vectors: (||sum||^2 - n) / (n (n-1)).
    const double mean = (squared_norm(sum) - static_cast<double>(n)) /
                        (static_cast<double>(n) * static_cast<double>(n - 1));
    return 0.5 * (mean + 1.0);
}

struct AnnotateParams {
    double d_vis = 5e-3;       // visibility distance for nearest-cloud-point test (m)
    GripperModel gripper;
    Tolerances tol;
    int jobs = 1;
};

// View-level labeling: each (contact pair, dihedral angle) instance is
// transformed into the view, filtered by endpoint visibility against the
// ground-truth depth and by gripper collision against background plus other
// objects, then emitted as a keypoint record. Output order is (object, pair,
// angle) regardless of thread count.
inline std::vector<AnnotationRecord> annotate_view(
    const Scene& scene, int view_index,
    const std::vector<std::vector<AntipodalGrasp>>& grasps_per_object, const DepthMap& depth,
    const AnnotateParams& params) {
    if (view_index < 0 || view_index >= static_cast<int>(scene.views.size()))
        throw SchemaError("annotate_view: view index out of range");
    if (grasps_per_object.size() != scene.objects.size())
        throw SchemaError("annotate_view: one grasp list per scene object required");
    const SceneView& view = scene.views[view_index];
    if (depth.empty()) throw MissingDepth(view.depth_ref);
    if (depth.width() != view.camera.width || depth.height() != view.camera.height)
        throw SchemaError("annotate_view: depth map dimensions do not match the view camera");
    if (depth.valid_count() == 0) return {};  // nothing visible anywhere

    const RigidTransform T_base_cam = view.T_cam_base.inverse();

    std::vector<AnnotationRecord> records;
    for (std::size_t oi = 0; oi < scene.objects.size(); ++oi) {
        const SceneObject& obj = scene.objects[oi];
        const RigidTransform T_cam_obj = view.T_cam_base * obj.T_base_obj;

        // Collision world: background plus every other object, in base frame.
        std::vector<PosedMesh> world;
        for (const SceneObject& bg : scene.background) world.push_back({&bg.mesh, bg.T_base_obj});
        for (std::size_t oj = 0; oj < scene.objects.size(); ++oj)
            if (oj != oi) world.push_back({&scene.objects[oj].mesh, scene.objects[oj].T_base_obj});

        const auto& grasps = grasps_per_object[oi];
        std::vector<std::vector<AnnotationRecord>> slots(grasps.size());
        parallel_for(static_cast<std::int64_t>(grasps.size()), params.jobs, [&](std::int64_t gi) {
            const AntipodalGrasp& g = grasps[gi];
            const Vec3 p1_cam = T_cam_obj.apply(g.p1);
            const Vec3 p2_cam = T_cam_obj.apply(g.p2);

            // Endpoint visibility: its nearest back-projected depth pixel must
            // lie within d_vis. When both qualify, the closer match wins.
            const NearestSurfacePoint ns1 = nearest_surface_point(p1_cam, depth, view.camera);
            const NearestSurfacePoint ns2 = nearest_surface_point(p2_cam, depth, view.camera);
            const bool vis1 = ns1.distance <= params.d_vis;
            const bool vis2 = ns2.distance <= params.d_vis;
            if (!vis1 && !vis2) return;
            const bool first = vis1 && (!vis2 || ns1.distance <= ns2.distance);
            const Vec3& visible = first ? p1_cam : p2_cam;
            const Vec3& other = first ? p2_cam : p1_cam;
            const NearestSurfacePoint& ns = first ? ns1 : ns2;
            if (visible.z <= 0.0) return;

            GraspMono label;
            label.p = ns.pixel;
            label.d = visible.z;
            label.w = norm(p2_cam - p1_cam);
            label.n_x = UnitVec3::from(other - visible);

            for (std::size_t pi = 0; pi < g.phi_samples.size(); ++pi) {
                label.phi = g.phi_samples[pi];
                GraspSE3 pose_base;
                try {
                    pose_base = recover_pose(label, view.camera, T_base_cam, params.tol);
                } catch (const DegenerateAxis&) {
                    continue;  // axis vertical in the base frame
                } catch (const InfeasibleAngle&) {
                    continue;  // angle unreachable for this axis in the base frame
                }
                if (!collision_check(pose_base, params.gripper, label.w, world)) continue;

                AnnotationRecord rec;
                rec.view_index = view_index;
                char id[64];
                std::snprintf(id, sizeof(id), "%s:%06zu:%02zu", obj.name.c_str(),
                              static_cast<std::size_t>(gi), pi);
                rec.grasp_id = id;
                rec.g_cam = transform_grasp(view.T_cam_base, pose_base);
                rec.keypoint = label.p;
                rec.d = label.d;
                rec.w = label.w;
                rec.phi = label.phi;
                rec.n_x_cam = label.n_x;
                slots[gi].push_back(std::move(rec));
            }
        });
        for (auto& s : slots)
            for (auto& r : s) records.push_back(std::move(r));
    }
    return records;
}

}  // namespace graspgeom
