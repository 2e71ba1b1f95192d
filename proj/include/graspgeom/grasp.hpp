#pragma once

#include <numbers>
#include <string>

#include "graspgeom/camera.hpp"
#include "graspgeom/config.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/transform.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

// Platform plane normal, robot base frame (z-up).
inline constexpr Vec3 kPlatformNormal{0.0, 0.0, 1.0};

// 5-parameter grasp: 2D keypoint p with depth d, grasp axis n_x (camera
// frame, pointing from the visible contact to the occluded one), width w and
// dihedral angle phi between gripper plane and platform plane.
struct GraspMono {
    Pixel p;
    double d = 0.0;
    double w = 0.0;
    double phi = 0.0;
    UnitVec3 n_x;

    void validate(const Tolerances& tol = {}) const {
        if (d <= 0.0) throw NonPositiveDepth(d);
        if (w <= 0.0 || w > tol.w_max)
            throw GeometryError("grasp width " + std::to_string(w) + " outside (0, " +
                                std::to_string(tol.w_max) + "]");
        if (phi < 0.0 || phi > std::numbers::pi)
            throw GeometryError("dihedral angle " + std::to_string(phi) + " outside [0, pi]");
    }
};

// Full rigid grasp pose; columns of R are [n_x | n_y | n_z].
struct GraspSE3 {
    Mat3 R;
    Vec3 t;
    std::string frame;

    void validate(double tol = 1e-9) const {
        if (!R.is_rotation(tol)) throw GeometryError("GraspSE3: rotation not orthonormal with det +1");
    }

    UnitVec3 n_x() const { return UnitVec3::from(R.col(0)); }
    UnitVec3 n_y() const { return UnitVec3::from(R.col(1)); }
    UnitVec3 n_z() const { return UnitVec3::from(R.col(2)); }
};

// Rigid change of frame for a grasp pose.
inline GraspSE3 transform_grasp(const RigidTransform& T, const GraspSE3& g) {
    if (g.frame != T.from_frame) throw FrameMismatch(T.from_frame, g.frame);
    return GraspSE3{T.R * g.R, T.apply(g.t), T.to_frame};
}

// Visible / occluded contact-point pair.
struct ContactPair {
    Vec3 p1;  // visible
    Vec3 p2;  // occluded
    std::string frame;

    double width() const { return norm(p2 - p1); }
};

// Contact-GraspNet style: visible contact, grasp axis, approach axis, width.
struct GraspContactNet {
    Vec3 p1;
    UnitVec3 n_x;
    UnitVec3 n_z;
    double w = 0.0;
    std::string frame;

    void validate(const Tolerances& tol = {}) const {
        const double d = std::abs(dot(n_x, n_z));
        if (d > tol.orthogonal_frame) throw NonOrthogonalFrame(d);
    }
};

// L2G style: both 3D contacts plus the dihedral angle.
struct GraspL2G {
    Vec3 p1;
    Vec3 p2;
    double phi = 0.0;
    std::string frame;
};

}  // namespace graspgeom
