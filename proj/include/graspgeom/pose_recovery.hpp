#pragma once

#include <algorithm>
#include <cmath>

#include "graspgeom/camera.hpp"
#include "graspgeom/config.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/grasp.hpp"
#include "graspgeom/transform.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

// The grasp axis is the negated surface normal at the visible contact.
inline UnitVec3 grasp_axis_from_normal(const UnitVec3& v_star) { return -v_star; }

// P1 from back-projection, P2 one width along the grasp axis. Camera frame;
// the tag names that frame for downstream transform checks.
inline ContactPair contact_points(const GraspMono& g, const PinholeCamera& cam,
                                  const std::string& frame = "camera") {
    const Vec3 p1 = backproject(g.p, g.d, cam);
    return ContactPair{p1, p1 + g.n_x.vec() * g.w, frame};
}

struct BaseContacts {
    Vec3 p1;
    Vec3 p2;
    Vec3 center;
    std::string frame;
};

inline BaseContacts to_base(const ContactPair& pair, const RigidTransform& T_base_cam) {
    if (pair.frame != T_base_cam.from_frame) throw FrameMismatch(T_base_cam.from_frame, pair.frame);
    const Vec3 p1 = T_base_cam.apply(pair.p1);
    const Vec3 p2 = T_base_cam.apply(pair.p2);
    return BaseContacts{p1, p2, (p1 + p2) * 0.5, T_base_cam.to_frame};
}

struct NySolution {
    UnitVec3 plus;      // cos(theta) e1 + sin(theta) e2 branch
    UnitVec3 minus;     // cos(theta) e1 - sin(theta) e2 branch
    UnitVec3 selected;  // branch whose n_z = n_x x n_y points toward the platform
    bool coincident = false;
};

// Solves  n_y . n_x = 0,  arccos(n_y . n) = phi,  ||n_y|| = 1  for the
// platform normal n = [0,0,1]. Closed trigonometric form of the quadratic:
// with e1 the unit projection of n orthogonal to n_x, e2 = n_x x e1 and
// s = sqrt(1 - (n_x.n)^2), both roots are cos(theta) e1 +- sin(theta) e2
// where cos(theta) = cos(phi)/s. Selection minimizes (n_x x n_y) . n.
inline NySolution solve_ny(const UnitVec3& n_x, double phi, const Tolerances& tol = {}) {
    const Vec3& n = kPlatformNormal;
    const Vec3& ax = n_x.vec();
    const double a = dot(ax, n);
    const double s2 = std::max(0.0, 1.0 - a * a);
    const double s = std::sqrt(s2);
    if (s < tol.degenerate_axis) throw DegenerateAxis();
    const double cphi = std::cos(phi);
    if (std::abs(cphi) > s + tol.angle_slack) throw InfeasibleAngle(phi, s);

    const Vec3 e1 = (n - ax * a) / s;
    const Vec3 e2 = cross(ax, e1);
    const double ct = std::clamp(cphi / s, -1.0, 1.0);
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));

    NySolution sol;
    sol.plus = UnitVec3::from(e1 * ct + e2 * st);
    sol.minus = UnitVec3::from(e1 * ct - e2 * st);
    sol.coincident = st == 0.0;

    const double down_plus = dot(cross(ax, sol.plus.vec()), n);
    const double down_minus = dot(cross(ax, sol.minus.vec()), n);
    // Ties (within branch_tie) go to the "+" branch.
    sol.selected = (down_minus < down_plus - tol.branch_tie) ? sol.minus : sol.plus;
    return sol;
}

// Full 6-DoF pose in the robot base frame. phi constrains the gripper plane
// against the platform in the base frame, so n_x is rotated there first.
inline GraspSE3 recover_pose(const GraspMono& g, const PinholeCamera& cam,
                             const RigidTransform& T_base_cam, const Tolerances& tol = {}) {
    g.validate(tol);
    const ContactPair pair = contact_points(g, cam, T_base_cam.from_frame);
    const BaseContacts contacts = to_base(pair, T_base_cam);
    const UnitVec3 n_x_base = T_base_cam.rotate(g.n_x);
    const NySolution ny = solve_ny(n_x_base, g.phi, tol);
    const Vec3 n_z = cross(n_x_base.vec(), ny.selected.vec());
    GraspSE3 pose;
    pose.R = Mat3::from_columns(n_x_base.vec(), ny.selected.vec(), n_z);
    pose.t = contacts.center;
    pose.frame = T_base_cam.to_frame;
    return pose;
}

}  // namespace graspgeom
