#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "graspgeom/errors.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

struct Triangle {
    int a = 0, b = 0, c = 0;
};

struct RayHit {
    Vec3 point;
    int face = -1;
    double distance = std::numeric_limits<double>::infinity();
};

// Indexed triangle set with per-face normals computed from winding and
// optional per-vertex (smooth) normals. Immutable after construction.
class TriangleMesh {
  public:
    TriangleMesh() = default;

    // Degenerate (near zero area) faces are discarded. Vertex normals, when
    // given, must be one per vertex; they enable smooth shading queries.
    TriangleMesh(std::vector<Vec3> vertices, std::vector<Triangle> faces,
                 std::vector<Vec3> vertex_normals = {})
        : vertices_(std::move(vertices)), vertex_normals_(std::move(vertex_normals)) {
        if (!vertex_normals_.empty() && vertex_normals_.size() != vertices_.size())
            throw GeometryError("TriangleMesh: vertex normal count does not match vertex count");
        const int n = static_cast<int>(vertices_.size());
        faces_.reserve(faces.size());
        face_normals_.reserve(faces.size());
        face_areas_.reserve(faces.size());
        for (const Triangle& f : faces) {
            if (f.a < 0 || f.a >= n || f.b < 0 || f.b >= n || f.c < 0 || f.c >= n)
                throw GeometryError("TriangleMesh: vertex index out of range");
            const Vec3 e1 = vertices_[f.b] - vertices_[f.a];
            const Vec3 e2 = vertices_[f.c] - vertices_[f.a];
            const Vec3 cr = cross(e1, e2);
            const double area2 = norm(cr);
            if (area2 < 1e-16) continue;  // degenerate
            faces_.push_back(f);
            face_normals_.push_back(cr / area2);
            face_areas_.push_back(0.5 * area2);
            total_area_ += 0.5 * area2;
        }
    }

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Triangle>& faces() const { return faces_; }
    const std::vector<Vec3>& face_normals() const { return face_normals_; }
    bool has_vertex_normals() const { return !vertex_normals_.empty(); }
    const std::vector<Vec3>& vertex_normals() const { return vertex_normals_; }

    std::size_t face_count() const { return faces_.size(); }
    double face_area(int f) const { return face_areas_[f]; }
    double total_area() const { return total_area_; }

    Vec3 point_at(int face, double bu, double bv) const {
        const Triangle& f = faces_[face];
        const double bw = 1.0 - bu - bv;
        return vertices_[f.a] * bw + vertices_[f.b] * bu + vertices_[f.c] * bv;
    }

    // Smooth normal when vertex normals exist, face normal otherwise.
    Vec3 normal_at(int face, double bu, double bv) const {
        if (vertex_normals_.empty()) return face_normals_[face];
        const Triangle& f = faces_[face];
        const double bw = 1.0 - bu - bv;
        const Vec3 n = vertex_normals_[f.a] * bw + vertex_normals_[f.b] * bu + vertex_normals_[f.c] * bv;
        const double len = norm(n);
        return len > 1e-12 ? n / len : face_normals_[face];
    }

    // Divergence-theorem signed volume; positive for consistently outward
    // oriented closed meshes.
    double signed_volume() const {
        double v = 0.0;
        for (const Triangle& f : faces_)
            v += dot(vertices_[f.a], cross(vertices_[f.b], vertices_[f.c]));
        return v / 6.0;
    }

    // Every edge shared by exactly two faces.
    bool is_watertight() const {
        if (faces_.empty()) return false;
        std::map<std::pair<int, int>, int> edges;
        auto add = [&edges](int i, int j) {
            if (i > j) std::swap(i, j);
            ++edges[{i, j}];
        };
        for (const Triangle& f : faces_) {
            add(f.a, f.b);
            add(f.b, f.c);
            add(f.c, f.a);
        }
        for (const auto& [e, count] : edges)
            if (count != 2) return false;
        return true;
    }

    TriangleMesh flipped() const {
        std::vector<Triangle> flipped_faces = faces_;
        for (Triangle& f : flipped_faces) std::swap(f.b, f.c);
        std::vector<Vec3> vn = vertex_normals_;
        for (Vec3& n : vn) n = -n;
        return TriangleMesh(vertices_, std::move(flipped_faces), std::move(vn));
    }

  private:
    std::vector<Vec3> vertices_;
    std::vector<Triangle> faces_;
    std::vector<Vec3> face_normals_;
    std::vector<Vec3> vertex_normals_;
    std::vector<double> face_areas_;
    double total_area_ = 0.0;
};

namespace detail {

// Moller-Trumbore. Returns the ray parameter or nothing.
inline std::optional<double> ray_triangle(const Vec3& origin, const Vec3& dir,
                                          const Vec3& a, const Vec3& b, const Vec3& c) {
    constexpr double kParallel = 1e-14;
    constexpr double kBary = 1e-12;  // slightly inclusive so shared edges are never missed
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 p = cross(dir, e2);
    const double det = dot(e1, p);
    if (std::abs(det) < kParallel) return std::nullopt;
    const double inv = 1.0 / det;
    const Vec3 s = origin - a;
    const double u = dot(s, p) * inv;
    if (u < -kBary || u > 1.0 + kBary) return std::nullopt;
    const Vec3 q = cross(s, e1);
    const double v = dot(dir, q) * inv;
    if (v < -kBary || u + v > 1.0 + kBary) return std::nullopt;
    return dot(e2, q) * inv;
}

}  // namespace detail

// Nearest intersection with distance > epsilon; exhaustive over all faces.
inline std::optional<RayHit> raycast(const TriangleMesh& mesh, const Vec3& origin,
                                     const UnitVec3& dir, double epsilon = 1e-6) {
    RayHit best;
    const auto& vs = mesh.vertices();
    const auto& fs = mesh.faces();
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const auto t = detail::ray_triangle(origin, dir.vec(), vs[fs[i].a], vs[fs[i].b], vs[fs[i].c]);
        if (t && *t > epsilon && *t < best.distance) {
            best.distance = *t;
            best.face = static_cast<int>(i);
        }
    }
    if (best.face < 0) return std::nullopt;
    best.point = origin + dir.vec() * best.distance;
    return best;
}

}  // namespace graspgeom
