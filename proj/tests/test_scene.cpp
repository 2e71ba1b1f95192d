#include <catch_amalgamated.hpp>

#include <set>

#include "graspgeom/pose_recovery.hpp"
#include "graspgeom/repr_convert.hpp"
#include "graspgeom/scene.hpp"
#include "graspgeom/synthetic.hpp"
#include "helpers.hpp"

using namespace graspgeom;
using Catch::Approx;

namespace {

PinholeCamera small_cam() {
    PinholeCamera c;
    c.fx = c.fy = 160.0;
    c.cx = 64.0;
    c.cy = 48.0;
    c.width = 128;
    c.height = 96;
    return c;
}

GraspSE3 random_pose(Rng& rng, const std::string& frame) {
    GraspSE3 g;
    g.R = testutil::random_rotation(rng);
    g.t = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    g.frame = frame;
    return g;
}

// Sphere resting in front of a horizontal-rig camera; returns scene plus the
// rendered ground-truth depth for view 0.
struct TestScene {
    Scene scene;
    DepthMap depth;
    std::vector<std::vector<AntipodalGrasp>> grasps;
};

TestScene build_sphere_scene() {
    TestScene ts;
    SceneObject sphere;
    sphere.name = "sphere";
    sphere.mesh = make_icosphere(0.03, 3);
    sphere.T_base_obj =
        RigidTransform(Mat3::identity(), Vec3{0.4, 0.0, 0.1}, "obj:sphere", "base");
    ts.scene.objects.push_back(std::move(sphere));

    SceneObject table;
    table.name = "table";
    table.mesh = make_platform(1.0);
    table.T_base_obj = RigidTransform::identity("obj:table", "base");
    ts.scene.background.push_back(std::move(table));

    SceneView view;
    view.name = "view_000";
    view.camera = small_cam();
    // Camera 0.4 m behind the sphere center, looking along +x (base).
    const Mat3 R_base_cam = Mat3::from_columns({0, -1, 0}, {0, 0, -1}, {1, 0, 0});
    const RigidTransform T_base_cam(R_base_cam, Vec3{0.0, 0.0, 0.1}, "camera", "base");
    view.T_cam_base = T_base_cam.inverse();
    ts.scene.views.push_back(view);

    std::vector<std::pair<const TriangleMesh*, RigidTransform>> render_list;
    const RigidTransform T_cam_obj =
        ts.scene.views[0].T_cam_base * ts.scene.objects[0].T_base_obj;
    render_list.push_back({&ts.scene.objects[0].mesh, T_cam_obj});
    const RigidTransform T_cam_table =
        ts.scene.views[0].T_cam_base * ts.scene.background[0].T_base_obj;
    render_list.push_back({&ts.scene.background[0].mesh, T_cam_table});
    ts.depth = render_depth(render_list, ts.scene.views[0].camera);

    SamplerConfig cfg;
    cfg.mu = 0.3;
    cfg.n_surface_samples = 250;
    cfg.w_max = 0.08;
    cfg.phi_grid = 2;
    cfg.seed = 5;
    ts.grasps.push_back(sample_grasps(ts.scene.objects[0].mesh, cfg));
    return ts;
}

}  // namespace

TEST_CASE("grasps_to_camera composes the two-step transform") {
    Rng rng(51);
    for (int i = 0; i < 200; ++i) {
        const auto T_base_obj = testutil::random_transform(rng, "obj", "base");
        const auto T_cam_base = testutil::random_transform(rng, "base", "camera");
        std::vector<GraspSE3> gs = {random_pose(rng, "obj"), random_pose(rng, "obj")};
        const auto cam_list = grasps_to_camera(gs, T_base_obj, T_cam_base);
        REQUIRE(cam_list.size() == gs.size());
        for (std::size_t k = 0; k < gs.size(); ++k) {
            // Sequential application equals the composed transform.
            const GraspSE3 two_step = transform_grasp(T_cam_base, transform_grasp(T_base_obj, gs[k]));
            CHECK(testutil::mat_gap(cam_list[k].R, two_step.R) < 1e-12);
            CHECK(norm(cam_list[k].t - two_step.t) < 1e-12);
            CHECK(cam_list[k].frame == "camera");
        }
        // Isometry: pairwise distance of the two poses preserved.
        CHECK(norm(cam_list[0].t - cam_list[1].t) ==
              Approx(norm(transform_grasp(T_base_obj, gs[0]).t -
                          transform_grasp(T_base_obj, gs[1]).t))
                  .margin(1e-12));
    }

    // Identity transforms leave poses untouched.
    Rng rng2(52);
    const GraspSE3 g = random_pose(rng2, "obj");
    const auto out = grasps_to_camera({g}, RigidTransform::identity("obj", "base"),
                                      RigidTransform::identity("base", "camera"));
    CHECK(rotation_angle(out[0].R, g.R) == 0.0);
    CHECK(norm(out[0].t - g.t) == 0.0);

    CHECK_THROWS_AS(grasps_to_camera({random_pose(rng2, "wrong")},
                                     RigidTransform::identity("obj", "base"),
                                     RigidTransform::identity("base", "camera")),
                    FrameMismatch);
}

TEST_CASE("normal_consistency: constant, split, and degenerate windows") {
    NormalMap nm(10, 10);
    for (int v = 0; v < 10; ++v)
        for (int u = 0; u < 10; ++u) nm.set(u, v, {0, 0, 1});
    CHECK(normal_consistency(nm, {5, 5}, 2) == Approx(1.0));
    CHECK(normal_consistency(nm, {5, 5}, 0) == Approx(1.0));  // single vector

    // Half up, half down with equal counts: window at the left edge is 3x2.
    NormalMap split(10, 10);
    for (int v = 0; v < 10; ++v)
        for (int u = 0; u < 10; ++u) split.set(u, v, v < 5 ? Vec3{0, 0, 1} : Vec3{0, 0, -1});
    // Window rows 4..6 x cols 0..1 -> 2 ups (row 4) x ... rows 4,5,6: row 4 up,
    // rows 5,6 down -> 2 up, 4 down. Use rows 3..5 for a 3-3 split via radius 1
    // at v = 4.5 boundary: pick v = 4, radius 1 -> rows 3,4,5: 4 up, 2 down.
    // Instead pin the exact combinatorial oracle on an explicit window.
    NormalMap six(3, 2);
    six.set(0, 0, {0, 0, 1});
    six.set(1, 0, {0, 0, 1});
    six.set(2, 0, {0, 0, 1});
    six.set(0, 1, {0, 0, -1});
    six.set(1, 1, {0, 0, -1});
    six.set(2, 1, {0, 0, -1});
    // Pairs: C(6,2)=15; same-group 2*C(3,2)=6 with cos=1; cross 9 with cos=-1.
    // mean = (6 - 9)/15 = -0.2 -> mapped 0.4.
    CHECK(normal_consistency(six, {1, 0}, 2) == Approx(0.4).margin(1e-12));

    // Brute-force pairwise oracle on a random window.
    NormalMap rnd(7, 7);
    Rng rng(53);
    for (int v = 0; v < 7; ++v)
        for (int u = 0; u < 7; ++u)
            if (rng.uniform() > 0.25) rnd.set(u, v, rng.unit_vector());
    double sum = 0.0;
    std::vector<Vec3> vecs;
    for (int v = 0; v < 7; ++v)
        for (int u = 0; u < 7; ++u)
            if (rnd.valid(u, v)) vecs.push_back(rnd.at(u, v));
    REQUIRE(vecs.size() >= 2);
    int pairs = 0;
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = i + 1; j < vecs.size(); ++j) {
            sum += dot(vecs[i], vecs[j]);
            ++pairs;
        }
    const double want = 0.5 * (sum / pairs + 1.0);
    CHECK(normal_consistency(rnd, {3, 3}, 3) == Approx(want).margin(1e-12));

    NormalMap allinvalid(5, 5);
    CHECK_THROWS_AS(normal_consistency(allinvalid, {2, 2}, 1), EmptyWindow);
    CHECK_THROWS_AS(normal_consistency(nm, {50, 50}, 1), EmptyWindow);
}

TEST_CASE("annotate_view: emitted labels close the recover_pose loop") {
    TestScene ts = build_sphere_scene();
    AnnotateParams params;
    params.tol.w_max = 0.08;
    params.d_vis = 5e-3;

    const auto records = annotate_view(ts.scene, 0, ts.grasps, ts.depth, params);
    REQUIRE(records.size() > 20);

    const SceneView& view = ts.scene.views[0];
    const RigidTransform T_base_cam = view.T_cam_base.inverse();
    for (const auto& rec : records) {
        CHECK(view.camera.contains(rec.keypoint));
        GraspMono m;
        m.p = rec.keypoint;
        m.d = rec.d;
        m.w = rec.w;
        m.phi = rec.phi;
        m.n_x = rec.n_x_cam;
        const GraspSE3 recovered = recover_pose(m, view.camera, T_base_cam, params.tol);
        const GraspSE3 label_base = transform_grasp(T_base_cam, rec.g_cam);
        CHECK(rotation_angle(recovered.R, label_base.R) < 1e-6);
        CHECK(norm(recovered.t - label_base.t) < 1e-6);
    }
}

TEST_CASE("annotate_view: both endpoints on the rim emit exactly one keypoint") {
    TestScene ts = build_sphere_scene();
    // One hand-made diameter grasp whose axis is parallel to the image plane
    // (base y): both contacts sit on the silhouette rim.
    AntipodalGrasp g;
    g.p1 = {0.0, -0.03, 0.0};
    g.p2 = {0.0, 0.03, 0.0};
    g.v1 = UnitVec3(0.0, -1.0, 0.0);
    g.v2 = UnitVec3(0.0, 1.0, 0.0);
    g.w = 0.06;
    g.phi_samples = {testutil::kPi / 2};
    g.quality = 1.0;
    ts.grasps[0] = {g};

    AnnotateParams params;
    params.tol.w_max = 0.08;
    params.d_vis = 8e-3;  // generous: rim sampling is sparse
    const auto records = annotate_view(ts.scene, 0, ts.grasps, ts.depth, params);
    REQUIRE(records.size() == 1);

    // Rule: the endpoint with the smaller nearest-cloud distance wins.
    const SceneView& view = ts.scene.views[0];
    const RigidTransform T_cam_obj = view.T_cam_base * ts.scene.objects[0].T_base_obj;
    const auto ns1 = nearest_surface_point(T_cam_obj.apply(g.p1), ts.depth, view.camera);
    const auto ns2 = nearest_surface_point(T_cam_obj.apply(g.p2), ts.depth, view.camera);
    REQUIRE(ns1.distance <= params.d_vis);
    REQUIRE(ns2.distance <= params.d_vis);
    const Pixel expected = ns1.distance <= ns2.distance ? ns1.pixel : ns2.pixel;
    CHECK(records[0].keypoint == expected);
}

TEST_CASE("annotate_view: occluded grasps are dropped") {
    TestScene ts = build_sphere_scene();
    // A wall between camera and sphere occludes everything.
    SceneObject wall;
    wall.name = "wall";
    wall.mesh = make_box({0.01, 0.5, 0.5});
    wall.T_base_obj = RigidTransform(Mat3::identity(), Vec3{0.2, 0.0, 0.1}, "obj:wall", "base");
    ts.scene.background.push_back(std::move(wall));

    std::vector<std::pair<const TriangleMesh*, RigidTransform>> render_list;
    for (const auto& o : ts.scene.objects)
        render_list.push_back({&o.mesh, ts.scene.views[0].T_cam_base * o.T_base_obj});
    for (const auto& o : ts.scene.background)
        render_list.push_back({&o.mesh, ts.scene.views[0].T_cam_base * o.T_base_obj});
    const DepthMap occluded = render_depth(render_list, ts.scene.views[0].camera);

    AnnotateParams params;
    params.tol.w_max = 0.08;
    const auto records = annotate_view(ts.scene, 0, ts.grasps, occluded, params);
    CHECK(records.empty());
}

TEST_CASE("annotate_view: shrinking d_vis never adds annotations") {
    TestScene ts = build_sphere_scene();
    AnnotateParams loose;
    loose.tol.w_max = 0.08;
    loose.d_vis = 8e-3;
    AnnotateParams tight = loose;
    tight.d_vis = 1e-3;

    const auto many = annotate_view(ts.scene, 0, ts.grasps, ts.depth, loose);
    const auto few = annotate_view(ts.scene, 0, ts.grasps, ts.depth, tight);
    CHECK(few.size() <= many.size());
    // Every tight-emission also appears under the loose threshold.
    std::set<std::string> loose_ids;
    for (const auto& r : many) loose_ids.insert(r.grasp_id);
    for (const auto& r : few) CHECK(loose_ids.count(r.grasp_id) == 1);
}

TEST_CASE("annotate_view: missing depth raises") {
    TestScene ts = build_sphere_scene();
    AnnotateParams params;
    CHECK_THROWS_AS(annotate_view(ts.scene, 0, ts.grasps, DepthMap{}, params), MissingDepth);
}

TEST_CASE("annotate_view is deterministic across thread counts") {
    TestScene ts = build_sphere_scene();
    AnnotateParams one;
    one.tol.w_max = 0.08;
    one.jobs = 1;
    AnnotateParams four = one;
    four.jobs = 4;
    const auto a = annotate_view(ts.scene, 0, ts.grasps, ts.depth, one);
    const auto b = annotate_view(ts.scene, 0, ts.grasps, ts.depth, four);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].grasp_id == b[i].grasp_id);
        CHECK(a[i].keypoint == b[i].keypoint);
        CHECK(a[i].phi == b[i].phi);
        CHECK(norm(a[i].g_cam.t - b[i].g_cam.t) == 0.0);
    }
}
