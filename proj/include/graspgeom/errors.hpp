#pragma once

#include <stdexcept>
#include <string>

namespace graspgeom {

// Error categories map 1:1 onto CLI exit codes: io=2, schema=3, geometry=4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveDepth : GeometryError {
    explicit NonPositiveDepth(double z)
        : GeometryError("depth must be positive, got " + std::to_string(z)) {}
};

struct EmptyDepthMap : GeometryError {
    EmptyDepthMap() : GeometryError("depth map has no valid pixels") {}
};

struct MissingDepth : GeometryError {
    explicit MissingDepth(const std::string& what) : GeometryError("missing depth map: " + what) {}
};

struct FrameMismatch : GeometryError {
    FrameMismatch(const std::string& expected, const std::string& got)
        : GeometryError("frame mismatch: expected '" + expected + "', got '" + got + "'") {}
};

// solve_ny: grasp axis parallel to the platform normal, dihedral constraint degenerate.
struct DegenerateAxis : GeometryError {
    DegenerateAxis() : GeometryError("grasp axis is vertical: dihedral angle is unconstrained or unsatisfiable") {}
};

// solve_ny: |cos(phi)| exceeds the reachable range for this axis.
struct InfeasibleAngle : GeometryError {
    InfeasibleAngle(double phi, double s)
        : GeometryError("dihedral angle " + std::to_string(phi) +
                        " infeasible for axis (|cos(phi)| > " + std::to_string(s) + ")") {}
};

struct DegenerateContactPair : GeometryError {
    DegenerateContactPair() : GeometryError("contact points coincide") {}
};

struct NonOrthogonalFrame : GeometryError {
    explicit NonOrthogonalFrame(double dot)
        : GeometryError("grasp axes not orthogonal, |n_x . n_z| = " + std::to_string(dot)) {}
};

struct EmptyMesh : GeometryError {
    EmptyMesh() : GeometryError("mesh has no triangles") {}
};

struct DegenerateWindow : GeometryError {
    DegenerateWindow() : GeometryError("crop window does not intersect the image") {}
};

struct EmptyWindow : GeometryError {
    EmptyWindow() : GeometryError("window contains no valid pixels") {}
};

}  // namespace graspgeom
