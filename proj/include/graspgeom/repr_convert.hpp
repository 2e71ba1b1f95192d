#pragma once

#include <algorithm>
#include <cmath>

#include "graspgeom/camera.hpp"
#include "graspgeom/config.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/grasp.hpp"
#include "graspgeom/pose_recovery.hpp"
#include "graspgeom/transform.hpp"

namespace graspgeom {

inline GraspMono l2g_to_mono(const GraspL2G& g, const PinholeCamera& cam,
                             const Tolerances& tol = {}) {
    const Vec3 axis = g.p2 - g.p1;
    const double w = norm(axis);
    if (w < tol.min_contact_separation) throw DegenerateContactPair();
    if (g.p1.z <= 0.0) throw NonPositiveDepth(g.p1.z);
    GraspMono m;
    m.p = project(g.p1, cam);
    m.d = g.p1.z;
    m.w = w;
    m.phi = g.phi;
    m.n_x = UnitVec3::from(axis);
    return m;
}

inline GraspL2G mono_to_l2g(const GraspMono& g, const PinholeCamera& cam) {
    const ContactPair pair = contact_points(g, cam);
    return GraspL2G{pair.p1, pair.p2, g.phi, pair.frame};
}

// Emits the visible contact with grasp and approach axes in the camera frame;
// n_z follows the platform-pointing selection (n_z . n <= 0 in base frame).
inline GraspContactNet mono_to_contactnet(const GraspMono& g, const PinholeCamera& cam,
                                          const RigidTransform& T_base_cam,
                                          const Tolerances& tol = {}) {
    const GraspSE3 pose = recover_pose(g, cam, T_base_cam, tol);
    const RigidTransform T_cam_base = T_base_cam.inverse();
    GraspContactNet c;
    c.p1 = backproject(g.p, g.d, cam);
    c.n_x = g.n_x;
    c.n_z = T_cam_base.rotate(pose.n_z());
    c.w = g.w;
    c.frame = T_base_cam.from_frame;
    return c;
}

inline GraspMono contactnet_to_mono(const GraspContactNet& g, const PinholeCamera& cam,
                                    const RigidTransform& T_base_cam,
                                    const Tolerances& tol = {}) {
    g.validate(tol);
    if (!g.frame.empty() && g.frame != T_base_cam.from_frame)
        throw FrameMismatch(T_base_cam.from_frame, g.frame);
    if (g.p1.z <= 0.0) throw NonPositiveDepth(g.p1.z);
    // Right-handed completion fixes the n_y sign before the arccos.
    const Vec3 n_y_cam = cross(g.n_z.vec(), g.n_x.vec());
    const Vec3 n_y_base = T_base_cam.rotate(n_y_cam);
    GraspMono m;
    m.p = project(g.p1, cam);
    m.d = g.p1.z;
    m.w = g.w;
    m.phi = std::acos(std::clamp(dot(n_y_base, kPlatformNormal), -1.0, 1.0));
    m.n_x = g.n_x;
    return m;
}

inline GraspL2G contactnet_to_l2g(const GraspContactNet& g, const PinholeCamera& cam,
                                  const RigidTransform& T_base_cam, const Tolerances& tol = {}) {
    return mono_to_l2g(contactnet_to_mono(g, cam, T_base_cam, tol), cam);
}

inline GraspContactNet l2g_to_contactnet(const GraspL2G& g, const PinholeCamera& cam,
                                         const RigidTransform& T_base_cam,
                                         const Tolerances& tol = {}) {
    return mono_to_contactnet(l2g_to_mono(g, cam, tol), cam, T_base_cam, tol);
}

// Inverse of recover_pose given the grasp width: reconstructs the 5-parameter
// form from a base-frame pose.
inline GraspMono mono_from_pose(const GraspSE3& pose, double w, const PinholeCamera& cam,
                                const RigidTransform& T_base_cam, const Tolerances& tol = {}) {
    if (pose.frame != T_base_cam.to_frame) throw FrameMismatch(T_base_cam.to_frame, pose.frame);
    const Vec3 n_x_base = pose.R.col(0);
    const Vec3 p1_base = pose.t - n_x_base * (w * 0.5);
    const RigidTransform T_cam_base = T_base_cam.inverse();
    const Vec3 p1_cam = T_cam_base.apply(p1_base);
    if (p1_cam.z <= 0.0) throw NonPositiveDepth(p1_cam.z);
    GraspMono m;
    m.p = project(p1_cam, cam);
    m.d = p1_cam.z;
    m.w = w;
    m.phi = std::acos(std::clamp(dot(pose.R.col(1), kPlatformNormal), -1.0, 1.0));
    m.n_x = UnitVec3::from(T_cam_base.rotate(n_x_base));
    m.validate(tol);
    return m;
}

}  // namespace graspgeom
