// graspgeom: batch CLI for grasp label generation, scene annotation,
// training-tensor export, representation conversion and pose recovery.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "graspgeom/graspgeom.hpp"

namespace fs = std::filesystem;
using namespace graspgeom;

namespace {

// ---- logging (GRASPGEOM_LOG = debug|info|warn|error) ----

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3 };

LogLevel log_threshold() {
    static const LogLevel level = [] {
        const char* env = std::getenv("GRASPGEOM_LOG");
        if (!env) return LogLevel::Info;
        const std::string s(env);
        if (s == "debug") return LogLevel::Debug;
        if (s == "warn") return LogLevel::Warn;
        if (s == "error") return LogLevel::Error;
        return LogLevel::Info;
    }();
    return level;
}

void log(LogLevel level, const std::string& msg) {
    static const char* names[] = {"debug", "info", "warn", "error"};
    if (level >= log_threshold())
        std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

// ---- pipeline configuration ----

struct SelfcheckBounds {
    double sphere_width_rel = 0.01;
    double sphere_line_offset = 0.02;
    double cube_width_abs = 1e-6;
    double plane_normal_rad = 1e-3;
    double ny_residual = 1e-9;
};

struct PipelineConfig {
    std::uint64_t seed = 0;
    Tolerances tol;
    SamplerConfig sampler;
    GripperModel gripper;
    double d_vis = 5e-3;
    double sigma = 2.0;
    int radius = 55;
    int roi_out = 112;
    SelfcheckBounds selfcheck;
};

SelfcheckBounds selfcheck_from_json(const json& j) {
    check_keys(j, "selfcheck", {},
               {"sphere_width_rel", "sphere_line_offset", "cube_width_abs", "plane_normal_rad",
                "ny_residual"});
    SelfcheckBounds b;
    if (j.contains("sphere_width_rel")) b.sphere_width_rel = j["sphere_width_rel"].get<double>();
    if (j.contains("sphere_line_offset")) b.sphere_line_offset = j["sphere_line_offset"].get<double>();
    if (j.contains("cube_width_abs")) b.cube_width_abs = j["cube_width_abs"].get<double>();
    if (j.contains("plane_normal_rad")) b.plane_normal_rad = j["plane_normal_rad"].get<double>();
    if (j.contains("ny_residual")) b.ny_residual = j["ny_residual"].get<double>();
    return b;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    PipelineConfig cfg;
    if (path.empty()) return cfg;
    const json j = load_json_file(path);
    check_keys(j, path, {},
               {"seed", "tolerances", "sampler", "gripper", "annotate", "training", "selfcheck"});
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerances")) cfg.tol = tolerances_from_json(j["tolerances"]);
    if (j.contains("sampler")) cfg.sampler = sampler_from_json(j["sampler"]);
    if (j.contains("gripper")) cfg.gripper = gripper_from_json(j["gripper"]);
    if (j.contains("annotate")) {
        check_keys(j["annotate"], "annotate", {}, {"d_vis"});
        if (j["annotate"].contains("d_vis")) cfg.d_vis = j["annotate"]["d_vis"].get<double>();
    }
    if (j.contains("training")) {
        check_keys(j["training"], "training", {}, {"sigma", "radius", "roi_out"});
        const json& t = j["training"];
        if (t.contains("sigma")) cfg.sigma = t["sigma"].get<double>();
        if (t.contains("radius")) cfg.radius = t["radius"].get<int>();
        if (t.contains("roi_out")) cfg.roi_out = t["roi_out"].get<int>();
    }
    if (j.contains("selfcheck")) cfg.selfcheck = selfcheck_from_json(j["selfcheck"]);
    return cfg;
}

// ---- shared helpers ----

struct GlobalArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;
    bool dry_run = false;
};

PipelineConfig resolve_config(const GlobalArgs& g) {
    PipelineConfig cfg = load_pipeline_config(g.config_path);
    if (g.seed_set) {
        cfg.seed = g.seed;
        cfg.sampler.seed = g.seed;
    } else {
        cfg.sampler.seed = cfg.seed;
    }
    return cfg;
}

void ensure_parent_dir(const std::string& file_path) {
    const fs::path parent = fs::path(file_path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

void write_raw_f32(const std::string& path, const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    std::vector<float> buf(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) buf[i] = static_cast<float>(values[i]);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!out) throw IoError("write failed: " + path);
}

void require_exists(const std::string& path, const char* what) {
    if (!fs::exists(path)) throw IoError(std::string(what) + " not found: " + path);
}

// ---- sample-grasps ----

int cmd_sample(const GlobalArgs& g, const std::string& mesh_path, const std::string& out_path) {
    require_exists(mesh_path, "mesh");
    const PipelineConfig cfg = resolve_config(g);
    const TriangleMesh mesh = load_mesh(mesh_path);
    if (!mesh.is_watertight())
        log(LogLevel::Warn, "mesh is not watertight; antipodal rays may escape: " + mesh_path);
    if (g.dry_run) {
        log(LogLevel::Info, "dry-run: inputs valid, skipping sampling");
        return 0;
    }
    Tolerances tol = cfg.tol;
    tol.w_max = std::max(tol.w_max, cfg.sampler.w_max);
    const auto grasps = sample_grasps(mesh, cfg.sampler, tol, g.jobs);
    log(LogLevel::Info, "sampled " + std::to_string(grasps.size()) + " antipodal grasps");
    ensure_parent_dir(out_path);
    write_jsonl(out_path, grasps, antipodal_to_json);
    std::map<std::string, std::string> inputs = {{"mesh", mesh_path}};
    if (!g.config_path.empty()) inputs["config"] = g.config_path;
    save_json_file(out_path + ".manifest.json",
                   make_manifest("sample-grasps", inputs, cfg.sampler.seed, {out_path}));
    return 0;
}

// ---- annotate ----

int cmd_annotate(const GlobalArgs& g, const std::string& scene_path, const std::string& grasps_dir,
                 const std::string& out_dir) {
    require_exists(scene_path, "scene config");
    require_exists(grasps_dir, "grasp directory");
    const PipelineConfig cfg = resolve_config(g);
    const Scene scene = load_scene(scene_path);

    std::vector<std::vector<AntipodalGrasp>> grasps_per_object;
    std::map<std::string, std::string> inputs = {{"scene", scene_path}};
    for (const SceneObject& obj : scene.objects) {
        const std::string path = (fs::path(grasps_dir) / (obj.name + ".jsonl")).string();
        require_exists(path, "grasp file");
        grasps_per_object.push_back(read_jsonl(path, antipodal_from_json));
        inputs["grasps:" + obj.name] = path;
    }
    for (const SceneView& view : scene.views) {
        const std::string depth_path = resolve_scene_ref(scene, view.depth_ref);
        require_exists(depth_path, "depth map");
        inputs["depth:" + view.name] = depth_path;
    }
    if (!g.config_path.empty()) inputs["config"] = g.config_path;

    if (g.dry_run) {
        log(LogLevel::Info, "dry-run: scene, grasps and depth maps valid; skipping annotation");
        return 0;
    }

    AnnotateParams params;
    params.d_vis = cfg.d_vis;
    params.gripper = cfg.gripper;
    params.tol = cfg.tol;
    params.jobs = g.jobs;

    fs::create_directories(out_dir);
    std::vector<std::string> outputs;
    json views = json::array();
    for (std::size_t vi = 0; vi < scene.views.size(); ++vi) {
        const SceneView& view = scene.views[vi];
        const DepthMap depth = read_depth(resolve_scene_ref(scene, view.depth_ref), scene.depth_scale);
        const auto records =
            annotate_view(scene, static_cast<int>(vi), grasps_per_object, depth, params);
        const std::string out_path = (fs::path(out_dir) / (view.name + ".jsonl")).string();
        write_jsonl(out_path, records, annotation_to_json);
        outputs.push_back(out_path);
        views.push_back(view_to_json(view));
        log(LogLevel::Info,
            view.name + ": " + std::to_string(records.size()) + " annotations");
    }
    const std::string views_path = (fs::path(out_dir) / "views.json").string();
    save_json_file(views_path, json{{"views", views}, {"depth_scale", scene.depth_scale}});
    outputs.push_back(views_path);
    save_json_file((fs::path(out_dir) / "manifest.json").string(),
                   make_manifest("annotate", inputs, cfg.seed, outputs));
    return 0;
}

// ---- gen-training ----

std::string find_view_image(const std::string& dir, const std::string& name,
                            std::initializer_list<const char*> exts, const char* what) {
    for (const char* ext : exts) {
        const std::string p = (fs::path(dir) / (name + ext)).string();
        if (fs::exists(p)) return p;
    }
    throw IoError(std::string(what) + " for view '" + name + "' not found under " + dir);
}

int cmd_gen_training(const GlobalArgs& g, const std::string& anno_dir, const std::string& rgb_dir,
                     const std::string& depth_dir, int radius, const std::string& out_dir) {
    require_exists(anno_dir, "annotation directory");
    require_exists(rgb_dir, "rgb directory");
    require_exists(depth_dir, "depth directory");
    const PipelineConfig cfg = resolve_config(g);
    const int r = radius > 0 ? radius : cfg.radius;
    if (r < 1) throw SchemaError("gen-training: radius must be >= 1");

    const std::string views_path = (fs::path(anno_dir) / "views.json").string();
    require_exists(views_path, "views.json");
    const json views_doc = load_json_file(views_path);
    check_keys(views_doc, views_path, {"views"}, {"depth_scale"});
    const double depth_scale = views_doc.contains("depth_scale")
                                   ? views_doc["depth_scale"].get<double>()
                                   : kDefaultDepthScale;

    struct ViewInputs {
        SceneView view;
        std::string anno_path, rgb_path, depth_path;
        std::vector<AnnotationRecord> records;
    };
    std::vector<ViewInputs> work;
    std::map<std::string, std::string> inputs = {{"views", views_path}};
    for (const json& jv : views_doc["views"]) {
        ViewInputs vi;
        vi.view = view_from_json(jv);
        vi.anno_path = (fs::path(anno_dir) / (vi.view.name + ".jsonl")).string();
        require_exists(vi.anno_path, "annotation file");
        vi.records = read_jsonl(vi.anno_path, annotation_from_json);
        vi.rgb_path = find_view_image(rgb_dir, vi.view.name, {".png"}, "rgb image");
        vi.depth_path =
            find_view_image(depth_dir, vi.view.name, {".f32", ".png"}, "depth map");
        inputs["anno:" + vi.view.name] = vi.anno_path;
        inputs["rgb:" + vi.view.name] = vi.rgb_path;
        inputs["depth:" + vi.view.name] = vi.depth_path;
        work.push_back(std::move(vi));
    }
    if (!g.config_path.empty()) inputs["config"] = g.config_path;

    if (g.dry_run) {
        log(LogLevel::Info, "dry-run: annotations and images located; skipping tensor export");
        return 0;
    }

    fs::create_directories(out_dir);
    std::vector<std::string> outputs;
    const json channel_order = json::array({"Rn", "Gn", "Bn", "nx", "ny", "nz"});

    for (const ViewInputs& vi : work) {
        const ImageRGB8 rgb = read_png_rgb8(vi.rgb_path);
        const DepthMap depth = read_depth(vi.depth_path, depth_scale);
        if (rgb.width != vi.view.camera.width || rgb.height != vi.view.camera.height)
            throw SchemaError("rgb image dimensions do not match camera for view " + vi.view.name);
        if (depth.width() != vi.view.camera.width || depth.height() != vi.view.camera.height)
            throw SchemaError("depth dimensions do not match camera for view " + vi.view.name);
        const NormalMap normals = normals_from_depth(depth, vi.view.camera);

        auto emit = [&](const std::string& stem, const std::vector<double>& data, const json& meta) {
            const std::string raw = (fs::path(out_dir) / (stem + ".f32")).string();
            write_raw_f32(raw, data);
            save_json_file((fs::path(out_dir) / (stem + ".json")).string(), meta);
            outputs.push_back(raw);
        };

        // Heatmap over all view keypoints.
        std::vector<Pixel> keypoints;
        for (const auto& rec : vi.records) keypoints.push_back(rec.keypoint);
        const Heatmap hm = make_heatmap(keypoints, vi.view.camera.width, vi.view.camera.height,
                                        cfg.sigma);
        json kps = json::array();
        for (const Pixel& k : keypoints) kps.push_back(json::array({k.u, k.v}));
        emit(vi.view.name + "_heatmap", hm.values,
             {{"shape", {hm.height, hm.width}}, {"sigma", cfg.sigma}, {"keypoints", kps}});

        // Normal map, invalid pixels as zeros.
        std::vector<double> nm_data(static_cast<std::size_t>(normals.width()) * normals.height() * 3,
                                    0.0);
        for (int v = 0; v < normals.height(); ++v)
            for (int u = 0; u < normals.width(); ++u) {
                if (!normals.valid(u, v)) continue;
                const std::size_t i = (static_cast<std::size_t>(v) * normals.width() + u) * 3;
                const Vec3& n = normals.at(u, v);
                nm_data[i] = n.x;
                nm_data[i + 1] = n.y;
                nm_data[i + 2] = n.z;
            }
        emit(vi.view.name + "_normals", nm_data,
             {{"shape", {normals.height(), normals.width(), 3}},
              {"channel_order", {"nx", "ny", "nz"}}});

        // Per-keypoint aligned crops.
        for (std::size_t k = 0; k < vi.records.size(); ++k) {
            const AnnotationRecord& rec = vi.records[k];
            const CropTensor crop = crop_pair(rgb, normals, rec.keypoint, r);
            const CropTensor aligned = roi_align(crop, cfg.roi_out);
            char stem[256];
            std::snprintf(stem, sizeof(stem), "%s_crop_%06zu", vi.view.name.c_str(), k);
            emit(stem, aligned.data,
                 {{"shape", {aligned.height, aligned.width, 6}},
                  {"channel_order", channel_order},
                  {"keypoint", {rec.keypoint.u, rec.keypoint.v}},
                  {"r", r},
                  {"grasp_id", rec.grasp_id}});
        }
        log(LogLevel::Info, vi.view.name + ": heatmap + normals + " +
                                std::to_string(vi.records.size()) + " crops");
    }
    save_json_file((fs::path(out_dir) / "manifest.json").string(),
                   make_manifest("gen-training", inputs, cfg.seed, outputs));
    return 0;
}

// ---- convert ----

int cmd_convert(const GlobalArgs& g, const std::string& from, const std::string& to,
                const std::string& in_path, const std::string& out_path,
                const std::string& intrinsics_path, const std::string& extrinsics_path) {
    require_exists(in_path, "input grasp file");
    require_exists(intrinsics_path, "intrinsics file");
    const PipelineConfig cfg = resolve_config(g);
    const PinholeCamera cam = camera_from_json(load_json_file(intrinsics_path));

    const bool needs_extrinsics = from == "contactnet" || to == "contactnet";
    RigidTransform T_base_cam = RigidTransform::identity("camera", "base");
    std::map<std::string, std::string> inputs = {{"grasps", in_path},
                                                 {"intrinsics", intrinsics_path}};
    if (needs_extrinsics) {
        if (extrinsics_path.empty())
            throw SchemaError("convert: --extrinsics required for contactnet conversions");
        require_exists(extrinsics_path, "extrinsics file");
        T_base_cam = transform_from_json(load_json_file(extrinsics_path), "extrinsics");
        inputs["extrinsics"] = extrinsics_path;
    }
    if (!g.config_path.empty()) inputs["config"] = g.config_path;

    // Normalize through the 5-parameter form.
    std::vector<GraspMono> monos;
    if (from == "mono") {
        monos = read_jsonl(in_path, mono_from_json);
    } else if (from == "l2g") {
        for (const GraspL2G& l : read_jsonl(in_path, l2g_from_json))
            monos.push_back(l2g_to_mono(l, cam, cfg.tol));
    } else if (from == "contactnet") {
        for (const GraspContactNet& c : read_jsonl(in_path, contactnet_from_json))
            monos.push_back(contactnet_to_mono(c, cam, T_base_cam, cfg.tol));
    } else {
        throw SchemaError("convert: unknown --from '" + from + "'");
    }

    if (g.dry_run) {
        log(LogLevel::Info, "dry-run: parsed " + std::to_string(monos.size()) + " grasps");
        return 0;
    }

    ensure_parent_dir(out_path);
    if (to == "mono") {
        write_jsonl(out_path, monos, mono_to_json);
    } else if (to == "l2g") {
        std::vector<GraspL2G> out;
        for (const GraspMono& m : monos) out.push_back(mono_to_l2g(m, cam));
        write_jsonl(out_path, out, l2g_to_json);
    } else if (to == "contactnet") {
        std::vector<GraspContactNet> out;
        for (const GraspMono& m : monos) out.push_back(mono_to_contactnet(m, cam, T_base_cam, cfg.tol));
        write_jsonl(out_path, out, contactnet_to_json);
    } else {
        throw SchemaError("convert: unknown --to '" + to + "'");
    }
    log(LogLevel::Info, "converted " + std::to_string(monos.size()) + " grasps " + from + " -> " + to);
    save_json_file(out_path + ".manifest.json",
                   make_manifest("convert", inputs, cfg.seed, {out_path}));
    return 0;
}

// ---- recover ----

int cmd_recover(const GlobalArgs& g, const std::string& anno_dir, const std::string& out_path) {
    require_exists(anno_dir, "annotation directory");
    const PipelineConfig cfg = resolve_config(g);
    const std::string views_path = (fs::path(anno_dir) / "views.json").string();
    require_exists(views_path, "views.json");
    const json views_doc = load_json_file(views_path);
    check_keys(views_doc, views_path, {"views"}, {"depth_scale"});

    std::vector<SceneView> views;
    for (const json& jv : views_doc["views"]) views.push_back(view_from_json(jv));

    std::map<std::string, std::string> inputs = {{"views", views_path}};
    if (!g.config_path.empty()) inputs["config"] = g.config_path;

    if (g.dry_run) {
        log(LogLevel::Info, "dry-run: views parsed; skipping recovery");
        return 0;
    }

    double max_trans = 0.0, max_rot = 0.0;
    std::size_t count = 0;
    json out_lines = json::array();
    ensure_parent_dir(out_path);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open for writing: " + out_path);

    for (std::size_t vi = 0; vi < views.size(); ++vi) {
        const SceneView& view = views[vi];
        const std::string anno_path = (fs::path(anno_dir) / (view.name + ".jsonl")).string();
        require_exists(anno_path, "annotation file");
        const auto records = read_jsonl(anno_path, annotation_from_json);
        const RigidTransform T_base_cam = view.T_cam_base.inverse();
        for (const AnnotationRecord& rec : records) {
            GraspMono m;
            m.p = rec.keypoint;
            m.d = rec.d;
            m.w = rec.w;
            m.phi = rec.phi;
            m.n_x = rec.n_x_cam;
            Tolerances tol = cfg.tol;
            tol.w_max = std::max(tol.w_max, m.w);
            const GraspSE3 pose = recover_pose(m, view.camera, T_base_cam, tol);
            const GraspSE3 label = transform_grasp(T_base_cam, rec.g_cam);
            max_trans = std::max(max_trans, norm(pose.t - label.t));
            max_rot = std::max(max_rot, rotation_angle(pose.R, label.R));
            ++count;
            out << json{{"view", rec.view_index},
                        {"grasp_id", rec.grasp_id},
                        {"pose", se3_to_json(pose)}}
                       .dump()
                << '\n';
        }
        inputs["anno:" + view.name] = anno_path;
    }
    if (!out) throw IoError("write failed: " + out_path);
    out.close();

    std::printf("recovered %zu poses; max deviation vs labels: %.3e m, %.3e rad\n", count,
                max_trans, max_rot);
    save_json_file(out_path + ".manifest.json",
                   make_manifest("recover", inputs, cfg.seed, {out_path}));
    return 0;
}

// ---- selfcheck ----

struct CheckResult {
    std::string name;
    bool pass = true;
    double residual = 0.0;
    double bound = 0.0;
};

void report(std::vector<CheckResult>& results, const std::string& name, double residual,
            double bound) {
    results.push_back({name, residual <= bound, residual, bound});
}

int cmd_selfcheck(const GlobalArgs& g) {
    const PipelineConfig cfg = resolve_config(g);
    const SelfcheckBounds& b = cfg.selfcheck;
    if (g.dry_run) {
        log(LogLevel::Info, "dry-run: selfcheck config valid");
        return 0;
    }
    std::vector<CheckResult> results;

    {  // Sphere antipodality: diameter grasps through the center.
        const TriangleMesh sphere = make_icosphere(1.0, 4);
        SamplerConfig sc;
        sc.mu = 0.3;
        sc.n_surface_samples = 400;
        sc.w_max = 3.0;
        sc.phi_grid = 2;
        sc.seed = cfg.seed;
        Tolerances tol = cfg.tol;
        tol.w_max = 3.0;
        const auto grasps = sample_grasps(sphere, sc, tol, g.jobs);
        double width_res = grasps.empty() ? 1.0 : 0.0;
        double line_res = grasps.empty() ? 1.0 : 0.0;
        for (const auto& gr : grasps) {
            width_res = std::max(width_res, std::abs(gr.w - 2.0) / 2.0);
            line_res = std::max(line_res, norm(cross(gr.p1, normalized(gr.p2 - gr.p1))));
        }
        report(results, "sphere-antipodal-width", width_res, b.sphere_width_rel);
        report(results, "sphere-grasp-line-offset", line_res, b.sphere_line_offset);
    }

    {  // Cube: tight cone admits only opposing parallel faces.
        const TriangleMesh cube = make_cube(1.0);
        SamplerConfig sc;
        sc.mu = 0.05;
        sc.n_surface_samples = 400;
        sc.w_max = 2.0;
        sc.phi_grid = 2;
        sc.seed = cfg.seed;
        Tolerances tol = cfg.tol;
        tol.w_max = 2.0;
        const auto grasps = sample_grasps(cube, sc, tol, g.jobs);
        double width_res = grasps.empty() ? 1.0 : 0.0;
        for (const auto& gr : grasps) width_res = std::max(width_res, std::abs(gr.w - 1.0));
        report(results, "cube-opposing-face-width", width_res, b.cube_width_abs);
    }

    {  // Plane normals from synthetic depth.
        PinholeCamera cam;
        cam.fx = cam.fy = 500.0;
        cam.cx = 64.0;
        cam.cy = 48.0;
        cam.width = 128;
        cam.height = 96;
        DepthMap flat(128, 96, 1.5);
        const NormalMap nf = normals_from_depth(flat, cam);
        double res = 0.0;
        for (int v = 1; v < 95; ++v)
            for (int u = 1; u < 127; ++u)
                if (nf.valid(u, v))
                    res = std::max(res, angle_between(nf.at(u, v), Vec3{0, 0, -1}));
        DepthMap tilted(128, 96);
        for (int v = 0; v < 96; ++v)
            for (int u = 0; u < 128; ++u) tilted.at(u, v) = 1.0 / (1.0 - (u - cam.cx) / cam.fx);
        const NormalMap nt = normals_from_depth(tilted, cam);
        const Vec3 expected = normalized(Vec3{1, 0, -1});
        for (int v = 1; v < 95; ++v)
            for (int u = 1; u < 127; ++u)
                if (nt.valid(u, v)) res = std::max(res, angle_between(nt.at(u, v), expected));
        report(results, "plane-normal-recovery", res, b.plane_normal_rad);
    }

    {  // Dihedral solve residuals on random feasible pairs.
        Rng rng(cfg.seed + 1);
        double res = 0.0;
        for (int i = 0; i < 10000; ++i) {
            Vec3 ax;
            double s;
            do {
                ax = rng.unit_vector();
                s = std::sqrt(std::max(0.0, 1.0 - ax.z * ax.z));
            } while (s < 0.05);
            const double phi = std::acos(rng.uniform(-(s - 1e-3 * s), s - 1e-3 * s));
            const auto sol = solve_ny(UnitVec3::from(ax), phi, cfg.tol);
            for (const UnitVec3& ny : {sol.plus, sol.minus}) {
                res = std::max(res, std::abs(dot(ny.vec(), ax)));
                res = std::max(res, std::abs(norm(ny.vec()) - 1.0));
                res = std::max(
                    res, std::abs(std::acos(std::clamp(dot(ny.vec(), kPlatformNormal), -1.0, 1.0)) -
                                  phi));
            }
        }
        report(results, "ny-constraint-residual", res, b.ny_residual);
    }

    bool all_pass = true;
    for (const CheckResult& r : results) {
        std::printf("[%s] %s: residual %.3e (bound %.3e)\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.residual, r.bound);
        all_pass = all_pass && r.pass;
    }
    if (!all_pass) throw GeometryError("selfcheck failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grasp-geometry batch tool: antipodal grasp labels, multi-view scene annotation, "
                 "training tensors, representation conversion and 6-DoF pose recovery"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalArgs g;
    app.add_option("--config", g.config_path, "pipeline configuration JSON");
    app.add_option("--seed", g.seed, "seed override")->each([&g](const std::string&) {
        g.seed_set = true;
    });
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--dry-run", g.dry_run, "validate inputs without writing outputs");

    // sample-grasps
    auto* sample = app.add_subcommand("sample-grasps", "antipodal grasp labels for a mesh");
    std::string mesh_path, out_path;
    sample->add_option("--mesh", mesh_path, "mesh file (.obj/.ply)")->required();
    sample->add_option("--out", out_path, "output grasp JSONL")->required();

    // annotate
    auto* annotate = app.add_subcommand("annotate", "per-view keypoint labels for a scene");
    std::string scene_path, grasps_dir, anno_out;
    annotate->add_option("--scene", scene_path, "scene config JSON")->required();
    annotate->add_option("--grasps", grasps_dir, "directory of <object>.jsonl grasp files")
        ->required();
    annotate->add_option("--out", anno_out, "output annotation directory")->required();

    // gen-training
    auto* gen = app.add_subcommand("gen-training", "heatmaps, normal maps and aligned crops");
    std::string gen_anno, gen_rgb, gen_depth, gen_out;
    int gen_radius = 0;
    gen->add_option("--anno", gen_anno, "annotation directory from 'annotate'")->required();
    gen->add_option("--rgb", gen_rgb, "directory of <view>.png images")->required();
    gen->add_option("--depth", gen_depth, "directory of <view>.f32/.png depth maps")->required();
    gen->add_option("--r", gen_radius, "crop radius in pixels");
    gen->add_option("--out", gen_out, "output tensor directory")->required();

    // convert
    auto* convert = app.add_subcommand("convert", "convert between grasp parameterizations");
    std::string conv_from, conv_to, conv_in, conv_out, conv_intr, conv_extr;
    convert->add_option("--from", conv_from, "mono|l2g|contactnet")->required();
    convert->add_option("--to", conv_to, "mono|l2g|contactnet")->required();
    convert->add_option("--in", conv_in, "input grasp JSONL")->required();
    convert->add_option("--out", conv_out, "output grasp JSONL")->required();
    convert->add_option("--intrinsics", conv_intr, "camera intrinsics JSON")->required();
    convert->add_option("--extrinsics", conv_extr, "T_base<-cam JSON (contactnet only)");

    // recover
    auto* recover = app.add_subcommand("recover", "6-DoF poses from annotation records");
    std::string rec_anno, rec_out;
    recover->add_option("--anno", rec_anno, "annotation directory")->required();
    recover->add_option("--out", rec_out, "output pose JSONL")->required();

    // selfcheck
    app.add_subcommand("selfcheck", "run the analytic-shape oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (sample->parsed()) return cmd_sample(g, mesh_path, out_path);
        if (annotate->parsed()) return cmd_annotate(g, scene_path, grasps_dir, anno_out);
        if (gen->parsed()) return cmd_gen_training(g, gen_anno, gen_rgb, gen_depth, gen_radius, gen_out);
        if (convert->parsed())
            return cmd_convert(g, conv_from, conv_to, conv_in, conv_out, conv_intr, conv_extr);
        if (recover->parsed()) return cmd_recover(g, rec_anno, rec_out);
        return cmd_selfcheck(g);
    } catch (const SchemaError& e) {
        log(LogLevel::Error, std::string("schema: ") + e.what());
        return 3;
    } catch (const IoError& e) {
        log(LogLevel::Error, std::string("io: ") + e.what());
        return 2;
    } catch (const GeometryError& e) {
        log(LogLevel::Error, std::string("geometry: ") + e.what());
        return 4;
    } catch (const std::exception& e) {
        log(LogLevel::Error, e.what());
        return 1;
    }
}
