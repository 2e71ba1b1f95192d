#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "graspgeom/config.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/mesh.hpp"
#include "graspgeom/parallel.hpp"
#include "graspgeom/vec3.hpp"

namespace graspgeom {

// Two-contact antipodal condition for a parallel jaw: the contact line must
// lie inside both friction cones (half-angle arctan(mu), boundary included).
// Evaluated algebraically as ||u x (-v)|| <= mu * (u . (-v)) with u . (-v) >= 0,
// which is exact on representable boundary inputs.
inline bool force_closure(const Vec3& p1, const UnitVec3& v1, const Vec3& p2, const UnitVec3& v2,
                          double mu, double min_separation = 1e-6) {
    const Vec3 u = p2 - p1;
    if (norm(u) < min_separation) throw DegenerateContactPair();
    auto inside_cone = [mu](const Vec3& line, const Vec3& inward) {
        const double along = dot(line, inward);
        if (along < 0.0) return false;
        return squared_norm(cross(line, inward)) <= mu * mu * along * along;
    };
    return inside_cone(u, -v1.vec()) && inside_cone(-u, -v2.vec());
}

// Mesh-level antipodal grasp label, object frame.
struct AntipodalGrasp {
    Vec3 p1;       // sampled surface point
    Vec3 p2;       // antipodal ray hit
    UnitVec3 v1;   // outward surface normal at p1
    UnitVec3 v2;   // outward surface normal at p2
    double w = 0.0;
    std::vector<double> phi_samples;
    double quality = 0.0;  // cos(angle(p2 - p1, -v1)); higher is better
};

struct SamplerConfig {
    double mu = 0.4;
    int n_surface_samples = 2000;
    double w_max = 0.08;
    int phi_grid = 4;
    std::uint64_t seed = 0;

    void validate() const {
        if (mu <= 0.0) throw SchemaError("sampler: mu must be positive");
        if (w_max <= 0.0) throw SchemaError("sampler: w_max must be positive");
        if (n_surface_samples < 0) throw SchemaError("sampler: n_surface_samples must be >= 0");
        if (phi_grid < 0) throw SchemaError("sampler: phi_grid must be >= 0");
    }
};

// Dihedral angles satisfying the solve_ny feasibility bound |cos(phi)| <= s
// for this axis form [arccos(s), pi - arccos(s)]. Returns a centered uniform
// grid of `count` angles inside it; empty when the axis is near vertical.
inline std::vector<double> feasible_phi_grid(const Vec3& axis, int count,
                                             const Tolerances& tol = {}) {
    std::vector<double> grid;
    if (count <= 0) return grid;
    const double a = dot(normalized(axis), Vec3{0.0, 0.0, 1.0});
    const double s = std::sqrt(std::max(0.0, 1.0 - a * a));
    if (s < tol.degenerate_axis) return grid;
    const double lo = std::acos(std::min(1.0, s));
    const double hi = std::numbers::pi - lo;
    grid.reserve(count);
    for (int k = 0; k < count; ++k)
        grid.push_back(lo + (hi - lo) * (k + 0.5) / count);
    return grid;
}

// Area-weighted antipodal sampling with force-closure filtering. Deterministic
// for a given (mesh, cfg): sample i draws from its own seed substream and the
// output keeps sample-index order regardless of thread count. Open meshes are
// accepted (rays may escape); callers can warn via TriangleMesh::is_watertight.
inline std::vector<AntipodalGrasp> sample_grasps(const TriangleMesh& mesh, const SamplerConfig& cfg,
                                                 const Tolerances& tol = {}, int jobs = 1) {
    cfg.validate();
    if (mesh.face_count() == 0) throw EmptyMesh();

    // Cumulative area table for area-weighted face selection.
    std::vector<double> cum(mesh.face_count());
    double acc = 0.0;
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        acc += mesh.face_area(static_cast<int>(f));
        cum[f] = acc;
    }

    std::vector<std::vector<AntipodalGrasp>> slots(cfg.n_surface_samples);
    parallel_for(cfg.n_surface_samples, jobs, [&](std::int64_t i) {
        Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(i));
        const double pick = rng.uniform() * acc;
        const int face = static_cast<int>(
            std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin());

        // Uniform barycentric point via the square-root trick.
        const double r1 = std::sqrt(rng.uniform());
        const double r2 = rng.uniform();
        const double bu = r1 * (1.0 - r2);
        const double bv = r1 * r2;

        const Vec3 p1 = mesh.point_at(face, bu, bv);
        const Vec3 v1_raw = mesh.normal_at(face, bu, bv);
        const UnitVec3 v1 = UnitVec3::from(v1_raw);

        // Cast into the object from just beneath the surface.
        const Vec3 origin = p1 - v1.vec() * tol.ray_epsilon;
        const auto hit = raycast(mesh, origin, -v1, tol.ray_epsilon);
        if (!hit) return;

        const Vec3 p2 = hit->point;
        const double w = norm(p2 - p1);
        if (w < tol.min_contact_separation || w > cfg.w_max) return;

        // Hit barycentrics for smooth-normal lookup.
        const Triangle& f2 = mesh.faces()[hit->face];
        const Vec3& a = mesh.vertices()[f2.a];
        const Vec3& b = mesh.vertices()[f2.b];
        const Vec3& c = mesh.vertices()[f2.c];
        const Vec3 n2f = cross(b - a, c - a);
        const double inv = 1.0 / squared_norm(n2f);
        const double hu = dot(cross(p2 - a, c - a), n2f) * inv;
        const double hv = dot(cross(b - a, p2 - a), n2f) * inv;
        const UnitVec3 v2 = UnitVec3::from(mesh.normal_at(hit->face, hu, hv));

        if (!force_closure(p1, v1, p2, v2, cfg.mu, tol.min_contact_separation)) return;

        AntipodalGrasp g;
        g.p1 = p1;
        g.p2 = p2;
        g.v1 = v1;
        g.v2 = v2;
        g.w = w;
        g.phi_samples = feasible_phi_grid(p2 - p1, cfg.phi_grid, tol);
        g.quality = std::clamp(dot(normalized(p2 - p1), -v1.vec()), 0.0, 1.0);
        slots[i].push_back(std::move(g));
    });

    std::vector<AntipodalGrasp> out;
    for (auto& s : slots)
        for (auto& g : s) out.push_back(std::move(g));
    return out;
}

}  // namespace graspgeom
