#pragma once

#include <array>
#include <cmath>
#include <string>

#include "graspgeom/errors.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

// 3x3 matrix, row-major storage.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        Mat3 r;
        r.m = {c0.x, c1.x, c2.x,
               c0.y, c1.y, c2.y,
               c0.z, c1.z, c2.z};
        return r;
    }

    double operator()(int row, int col) const { return m[3 * row + col]; }
    double& operator()(int row, int col) { return m[3 * row + col]; }

    Vec3 col(int c) const { return {m[c], m[3 + c], m[6 + c]}; }
    Vec3 row(int r) const { return {m[3 * r], m[3 * r + 1], m[3 * r + 2]}; }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    double trace() const { return m[0] + m[4] + m[8]; }

    // R^T R = I and det = +1, both within tol.
    bool is_rotation(double tol = 1e-9) const {
        const Mat3 g = transposed() * (*this);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double want = (i == j) ? 1.0 : 0.0;
                if (std::abs(g(i, j) - want) > tol) return false;
            }
        return std::abs(det() - 1.0) <= tol;
    }
};

inline Mat3 rot_x(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 r;
    r.m = {1, 0, 0, 0, c, -s, 0, s, c};
    return r;
}

inline Mat3 rot_y(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 r;
    r.m = {c, 0, s, 0, 1, 0, -s, 0, c};
    return r;
}

inline Mat3 rot_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 r;
    r.m = {c, -s, 0, s, c, 0, 0, 0, 1};
    return r;
}

inline Mat3 axis_angle(const UnitVec3& axis, double angle) {
    const Vec3& u = axis.vec();
    const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
    Mat3 r;
    r.m = {c + u.x * u.x * t,      u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s,
           u.y * u.x * t + u.z * s, c + u.y * u.y * t,      u.y * u.z * t - u.x * s,
           u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t};
    return r;
}

// Geodesic distance between two rotations, in radians.
inline double rotation_angle(const Mat3& a, const Mat3& b) {
    const double c = ((a.transposed() * b).trace() - 1.0) / 2.0;
    return std::acos(std::clamp(c, -1.0, 1.0));
}

// Rigid motion mapping points expressed in `from_frame` into `to_frame`.
struct RigidTransform {
    Mat3 R;
    Vec3 t;
    std::string from_frame;
    std::string to_frame;

    RigidTransform() = default;

    RigidTransform(const Mat3& R_, const Vec3& t_, std::string from, std::string to, double tol = 1e-9)
        : R(R_), t(t_), from_frame(std::move(from)), to_frame(std::move(to)) {
        if (!R.is_rotation(tol))
            throw GeometryError("RigidTransform: rotation block is not orthonormal with det +1");
    }

    static RigidTransform identity(std::string from, std::string to) {
        return RigidTransform(Mat3::identity(), Vec3{}, std::move(from), std::move(to));
    }

    Vec3 apply(const Vec3& p) const { return R * p + t; }
    Vec3 rotate(const Vec3& v) const { return R * v; }
    UnitVec3 rotate(const UnitVec3& v) const { return UnitVec3::from(R * v.vec()); }

    RigidTransform inverse() const {
        const Mat3 Rt = R.transposed();
        RigidTransform r;
        r.R = Rt;
        r.t = -(Rt * t);
        r.from_frame = to_frame;
        r.to_frame = from_frame;
        return r;
    }

    // T_a<-b * T_b<-c = T_a<-c; the inner frames must agree.
    RigidTransform operator*(const RigidTransform& rhs) const {
        if (from_frame != rhs.to_frame) throw FrameMismatch(from_frame, rhs.to_frame);
        RigidTransform r;
        r.R = R * rhs.R;
        r.t = R * rhs.t + t;
        r.from_frame = rhs.from_frame;
        r.to_frame = to_frame;
        return r;
    }
};

}  // namespace graspgeom
