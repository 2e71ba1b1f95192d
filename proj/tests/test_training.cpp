#include <catch_amalgamated.hpp>

#include "graspgeom/synthetic.hpp"
#include "graspgeom/training.hpp"
#include "helpers.hpp"

using namespace graspgeom;
using Catch::Approx;

TEST_CASE("make_heatmap: closed-form Gaussian values") {
    const Heatmap hm = make_heatmap({{5, 5}}, 16, 16, 2.0);
    CHECK(hm.at(5, 5) == Approx(1.0));
    CHECK(hm.at(6, 5) == Approx(std::exp(-0.125)).margin(1e-15));
    CHECK(hm.at(5, 6) == Approx(std::exp(-0.125)).margin(1e-15));
    CHECK(hm.at(9, 8) == Approx(std::exp(-(16.0 + 9.0) / 8.0)).margin(1e-15));
}

TEST_CASE("make_heatmap: empty list, idempotent max, bounds") {
    const Heatmap zero = make_heatmap({}, 8, 8, 2.0);
    for (double v : zero.values) CHECK(v == 0.0);

    const Heatmap once = make_heatmap({{3, 3}}, 8, 8, 1.5);
    const Heatmap twice = make_heatmap({{3, 3}, {3, 3}}, 8, 8, 1.5);
    CHECK(once.values == twice.values);

    Rng rng(61);
    std::vector<Pixel> kps;
    for (int i = 0; i < 5; ++i) kps.push_back({rng.uniform(-4, 20), rng.uniform(-4, 20)});
    const Heatmap hm = make_heatmap(kps, 16, 16, 2.5);
    for (double v : hm.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    // Permutation invariance.
    std::vector<Pixel> rev(kps.rbegin(), kps.rend());
    CHECK(make_heatmap(rev, 16, 16, 2.5).values == hm.values);
}

namespace {

ImageRGB8 gradient_image(int w, int h) {
    ImageRGB8 img(w, h);
    for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u)
            img.set(u, v, static_cast<std::uint8_t>(u % 256), static_cast<std::uint8_t>(v % 256),
                    static_cast<std::uint8_t>((u + v) % 256));
    return img;
}

NormalMap constant_normals(int w, int h, const Vec3& n) {
    NormalMap nm(w, h);
    for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) nm.set(u, v, n);
    return nm;
}

}  // namespace

TEST_CASE("crop_pair: interior keypoint yields odd square dims") {
    const ImageRGB8 img = gradient_image(256, 256);
    const NormalMap nm = constant_normals(256, 256, {0, 0, -1});
    const CropTensor t = crop_pair(img, nm, {128, 128}, 55);
    CHECK(t.width == 111);
    CHECK(t.height == 111);
    CHECK(t.source_radius == 55);
    // Normal channels pass through untouched.
    CHECK(t.at(10, 10, 5) == -1.0);
    CHECK(t.at(10, 10, 3) == 0.0);
}

TEST_CASE("crop_pair: corner keypoint is clipped") {
    const ImageRGB8 img = gradient_image(64, 64);
    const NormalMap nm = constant_normals(64, 64, {0, 0, -1});
    const CropTensor t = crop_pair(img, nm, {0, 0}, 10);
    CHECK(t.width == 11);
    CHECK(t.height == 11);
}

TEST_CASE("crop_pair: standardized RGB channels, zero-variance guarded") {
    const ImageRGB8 img = gradient_image(64, 64);
    const NormalMap nm = constant_normals(64, 64, {0, 0, -1});
    const CropTensor t = crop_pair(img, nm, {32, 32}, 9);
    for (int ch = 0; ch < 3; ++ch) {
        double mean = 0.0, var = 0.0;
        for (int v = 0; v < t.height; ++v)
            for (int u = 0; u < t.width; ++u) mean += t.at(u, v, ch);
        mean /= t.width * t.height;
        CHECK(mean == Approx(0.0).margin(1e-12));
        for (int v = 0; v < t.height; ++v)
            for (int u = 0; u < t.width; ++u) var += t.at(u, v, ch) * t.at(u, v, ch);
        var /= t.width * t.height;
        CHECK(var == Approx(1.0).margin(1e-9));
    }

    ImageRGB8 flat(32, 32);
    for (auto& b : flat.data) b = 77;
    const CropTensor tf = crop_pair(flat, constant_normals(32, 32, {0, 0, -1}), {16, 16}, 5);
    for (int v = 0; v < tf.height; ++v)
        for (int u = 0; u < tf.width; ++u)
            for (int ch = 0; ch < 3; ++ch) CHECK(tf.at(u, v, ch) == 0.0);
}

TEST_CASE("crop_pair: off-image window is degenerate") {
    const ImageRGB8 img = gradient_image(32, 32);
    const NormalMap nm = constant_normals(32, 32, {0, 0, -1});
    CHECK_THROWS_AS(crop_pair(img, nm, {100, 100}, 5), DegenerateWindow);
    CHECK_THROWS_AS(crop_pair(img, nm, {16, 16}, 0), SchemaError);
}

TEST_CASE("roi_align: constants preserved exactly at any size") {
    Rng rng(62);
    for (int trial = 0; trial < 10; ++trial) {
        const int w = rng.uniform_int(1, 200);
        const int h = rng.uniform_int(1, 200);
        CropTensor t(w, h);
        const double value = rng.uniform(-3.0, 3.0);
        for (double& x : t.data) x = value;
        const CropTensor out = roi_align(t, 112);
        REQUIRE(out.width == 112);
        REQUIRE(out.height == 112);
        for (double x : out.data) CHECK(x == Approx(value).margin(1e-12));
    }
}

TEST_CASE("roi_align: 112x112 input is copied bit-for-bit") {
    Rng rng(63);
    CropTensor t(112, 112);
    for (double& x : t.data) x = rng.uniform(-1.0, 1.0);
    const CropTensor out = roi_align(t, 112);
    CHECK(out.data == t.data);
}

TEST_CASE("roi_align: linear ramp maps to the rescaled ramp") {
    CropTensor t(56, 56);
    for (int v = 0; v < 56; ++v)
        for (int u = 0; u < 56; ++u)
            for (int ch = 0; ch < 6; ++ch) t.at(u, v, ch) = static_cast<double>(u);
    const CropTensor out = roi_align(t, 112);
    const double scale = 56.0 / 112.0;
    // Interior cells follow the analytic rescaled ramp; clamped borders do not.
    for (int i = 40; i < 72; ++i)
        for (int j = 4; j < 108; ++j) {
            const double sx = (j + 0.5) * scale - 0.5;
            CHECK(out.at(j, i, 0) == Approx(sx).margin(1e-9));
        }
}

TEST_CASE("roi_align matches the brute-force bilinear oracle") {
    Rng rng(64);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = rng.uniform_int(2, 64);
        const int h = rng.uniform_int(2, 64);
        CropTensor t(w, h);
        for (double& x : t.data) x = rng.uniform(-2.0, 2.0);
        const CropTensor out = roi_align(t, 112);
        for (int probe = 0; probe < 200; ++probe) {
            const int i = rng.uniform_int(0, 111);
            const int j = rng.uniform_int(0, 111);
            const int ch = rng.uniform_int(0, 5);
            CHECK(out.at(j, i, ch) ==
                  Approx(testutil::roi_align_oracle_cell(t, 112, i, j, ch)).margin(1e-9));
        }
    }
}

namespace {

PinholeCamera normals_cam() {
    PinholeCamera c;
    c.fx = c.fy = 500.0;
    c.cx = 64.0;
    c.cy = 48.0;
    c.width = 128;
    c.height = 96;
    return c;
}

}  // namespace

TEST_CASE("normals_from_depth: fronto-parallel plane") {
    const auto cam = normals_cam();
    const DepthMap dm(128, 96, 1.5);
    const NormalMap nm = normals_from_depth(dm, cam);
    for (int v = 1; v < 95; ++v)
        for (int u = 1; u < 127; ++u) {
            REQUIRE(nm.valid(u, v));
            CHECK(angle_between(nm.at(u, v), Vec3{0, 0, -1}) < 1e-9);
        }
    CHECK_FALSE(nm.valid(0, 0));  // border has no full neighborhood
}

TEST_CASE("normals_from_depth: 45-degree plane") {
    const auto cam = normals_cam();
    // Plane x = z - 1 (normal (1,0,-1)/sqrt(2), 45 deg off the optical axis):
    // z(u) = 1 / (1 - (u - cx)/fx).
    DepthMap dm(128, 96);
    for (int v = 0; v < 96; ++v)
        for (int u = 0; u < 128; ++u) {
            const double a = (u - cam.cx) / cam.fx;
            dm.at(u, v) = 1.0 / (1.0 - a);
        }
    const NormalMap nm = normals_from_depth(dm, cam);
    const Vec3 expected = normalized(Vec3{1, 0, -1});
    for (int v = 1; v < 95; ++v)
        for (int u = 1; u < 127; ++u) {
            REQUIRE(nm.valid(u, v));
            CHECK(angle_between(nm.at(u, v), expected) < 1e-3);
        }
}

TEST_CASE("normals_from_depth: analytic sphere within 2 degrees off-silhouette") {
    const auto cam = normals_cam();
    const Vec3 center{0, 0, 2.0};
    const double radius = 0.5;
    DepthMap dm(128, 96);
    for (int v = 0; v < 96; ++v)
        for (int u = 0; u < 128; ++u) {
            const Vec3 dir = normalized(Vec3{(u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0});
            const double b = dot(dir, center);
            const double disc = b * b - (squared_norm(center) - radius * radius);
            if (disc < 0.0) continue;
            const double t = b - std::sqrt(disc);
            dm.at(u, v) = t * dir.z;
        }
    const NormalMap nm = normals_from_depth(dm, cam);

    // Exclude a 3-px band around invalid (silhouette/background) pixels.
    auto near_invalid = [&](int u, int v) {
        for (int dv = -3; dv <= 3; ++dv)
            for (int du = -3; du <= 3; ++du) {
                const int uu = u + du, vv = v + dv;
                if (uu < 0 || vv < 0 || uu >= 128 || vv >= 96) return true;
                if (!dm.valid(uu, vv)) return true;
            }
        return false;
    };

    int checked = 0;
    for (int v = 1; v < 95; ++v)
        for (int u = 1; u < 127; ++u) {
            if (near_invalid(u, v) || !nm.valid(u, v)) continue;
            const Vec3 P = backproject({double(u), double(v)}, dm.at(u, v), cam);
            const Vec3 analytic = normalized(P - center);
            CHECK(angle_between(nm.at(u, v), analytic) < 2.0 * testutil::kPi / 180.0);
            ++checked;
        }
    CHECK(checked > 500);
}

TEST_CASE("normals_from_depth: unit length, camera-facing, holes invalidate") {
    const auto cam = normals_cam();
    DepthMap dm(128, 96);
    Rng rng(65);
    for (int v = 0; v < 96; ++v)
        for (int u = 0; u < 128; ++u)
            if (rng.uniform() > 0.1) dm.at(u, v) = 1.0 + 0.3 * std::sin(u * 0.2) * std::cos(v * 0.17);
    const NormalMap nm = normals_from_depth(dm, cam);
    for (int v = 0; v < 96; ++v)
        for (int u = 0; u < 128; ++u) {
            if (!nm.valid(u, v)) continue;
            CHECK(norm(nm.at(u, v)) == Approx(1.0).margin(1e-12));
            const Vec3 P = backproject({double(u), double(v)}, dm.at(u, v), cam);
            CHECK(dot(nm.at(u, v), P) < 0.0);
            // Validity requires the full cross neighborhood.
            CHECK(dm.valid(u, v));
            CHECK((dm.valid(u - 1, v) && dm.valid(u + 1, v) && dm.valid(u, v - 1) &&
                   dm.valid(u, v + 1)));
        }
}
