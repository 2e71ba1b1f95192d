#include <catch_amalgamated.hpp>

#include "graspgeom/transform.hpp"
#include "graspgeom/vec3.hpp"
#include "helpers.hpp"

using namespace graspgeom;
using Catch::Approx;

TEST_CASE("vector algebra basics") {
    const Vec3 a{1, 2, 3}, b{4, 5, 6};
    CHECK(dot(a, b) == Approx(32.0));
    const Vec3 c = cross(a, b);
    CHECK(c == Vec3{-3, 6, -3});
    CHECK(dot(c, a) == Approx(0.0).margin(1e-12));
    CHECK(dot(c, b) == Approx(0.0).margin(1e-12));
    CHECK(norm(Vec3{3, 4, 0}) == Approx(5.0));
}

TEST_CASE("UnitVec3 enforces unit norm on construction") {
    CHECK_NOTHROW(UnitVec3(1.0, 0.0, 0.0));
    CHECK_THROWS_AS(UnitVec3(Vec3{1.0, 1.0, 0.0}), GeometryError);
    CHECK_THROWS_AS(UnitVec3(Vec3{1.0 + 1e-6, 0.0, 0.0}), GeometryError);
    // within 1e-9 is acceptable
    CHECK_NOTHROW(UnitVec3(Vec3{1.0 + 1e-10, 0.0, 0.0}));
    CHECK(norm(UnitVec3::from(Vec3{3, 4, 0}).vec()) == Approx(1.0));
}

TEST_CASE("rigid transform validates rotation invariants") {
    Mat3 bad = Mat3::identity();
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(RigidTransform(bad, Vec3{}, "a", "b"), GeometryError);

    // Reflection: orthonormal but det -1.
    Mat3 mirror = Mat3::identity();
    mirror(2, 2) = -1.0;
    CHECK_THROWS_AS(RigidTransform(mirror, Vec3{}, "a", "b"), GeometryError);

    CHECK_NOTHROW(RigidTransform(rot_z(0.7), Vec3{1, 2, 3}, "a", "b"));
}

TEST_CASE("composition rejects mismatched frames") {
    const auto T_ab = RigidTransform::identity("b", "a");
    const auto T_bc = RigidTransform::identity("c", "b");
    const auto T_ac = T_ab * T_bc;
    CHECK(T_ac.from_frame == "c");
    CHECK(T_ac.to_frame == "a");
    CHECK_THROWS_AS(T_bc * T_ab, FrameMismatch);
}

TEST_CASE("transform inverse and associativity") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        const auto T = testutil::random_transform(rng, "cam", "base");
        const auto I = T * T.inverse();
        CHECK(testutil::mat_gap(I.R, Mat3::identity()) < 1e-9);
        CHECK(norm(I.t) < 1e-9);

        const auto A = testutil::random_transform(rng, "c", "d");
        const auto B = testutil::random_transform(rng, "b", "c");
        const auto C = testutil::random_transform(rng, "a", "b");
        const Vec3 p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Vec3 left = ((A * B) * C).apply(p);
        const Vec3 right = (A * (B * C)).apply(p);
        CHECK(norm(left - right) < 1e-12);
    }
}

TEST_CASE("transforms are isometries") {
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const auto T = testutil::random_transform(rng, "x", "y");
        const Vec3 p = rng.unit_vector() * rng.uniform(0.0, 2.0);
        const Vec3 q = rng.unit_vector() * rng.uniform(0.0, 2.0);
        CHECK(norm(T.apply(p) - T.apply(q)) == Approx(norm(p - q)).margin(1e-12));
    }
}

TEST_CASE("rotation_angle recovers axis-angle magnitude") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const Vec3 axis = rng.unit_vector();
        const double angle = rng.uniform(0.0, testutil::kPi);
        const Mat3 R = axis_angle(UnitVec3::from(axis), angle);
        CHECK(rotation_angle(Mat3::identity(), R) == Approx(angle).margin(1e-9));
    }
}
