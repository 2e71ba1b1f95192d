#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "graspgeom/errors.hpp"

namespace graspgeom {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    constexpr bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

constexpr double squared_norm(const Vec3& v) { return dot(v, v); }

inline double norm(const Vec3& v) { return std::sqrt(squared_norm(v)); }

inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n < 1e-300) throw GeometryError("cannot normalize zero-length vector");
    return v / n;
}

// Angle between two nonzero vectors, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
    const double na = norm(a), nb = norm(b);
    if (na < 1e-300 || nb < 1e-300) throw GeometryError("angle_between: zero-length vector");
    const double c = dot(a, b) / (na * nb);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

// Direction with a unit-norm guarantee checked at construction.
class UnitVec3 {
  public:
    UnitVec3() : v_(1.0, 0.0, 0.0) {}

    explicit UnitVec3(const Vec3& v, double tol = 1e-9) : v_(v) {
        if (std::abs(norm(v) - 1.0) > tol)
            throw GeometryError("UnitVec3: norm " + std::to_string(norm(v)) + " not within tolerance of 1");
    }

    UnitVec3(double x, double y, double z, double tol = 1e-9) : UnitVec3(Vec3{x, y, z}, tol) {}

    // Normalizes an arbitrary nonzero vector.
    static UnitVec3 from(const Vec3& v) { return UnitVec3(normalized(v), 1e-6); }

    const Vec3& vec() const { return v_; }
    operator const Vec3&() const { return v_; }

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }

    UnitVec3 operator-() const {
        UnitVec3 r;
        r.v_ = -v_;
        return r;
    }

  private:
    Vec3 v_;
};

inline double dot(const UnitVec3& a, const UnitVec3& b) { return dot(a.vec(), b.vec()); }

}  // namespace graspgeom
