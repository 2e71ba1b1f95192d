#pragma once

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graspgeom/camera.hpp"
#include "graspgeom/collision.hpp"
#include "graspgeom/config.hpp"
#include "graspgeom/errors.hpp"
#include "graspgeom/grasp.hpp"
#include "graspgeom/sampling.hpp"
#include "graspgeom/scene.hpp"
#include "graspgeom/transform.hpp"

namespace graspgeom {

using json = nlohmann::json;

// Strict object access: unknown keys are schema errors, as are missing
// required keys. `optional` keys may be absent.
inline void check_keys(const json& j, const std::string& context,
                       std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) throw SchemaError(context + ": expected a JSON object");
    std::set<std::string> allowed;
    for (const char* k : required) {
        if (!j.contains(k)) throw SchemaError(context + ": missing key '" + k + "'");
        allowed.insert(k);
    }
    for (const char* k : optional) allowed.insert(k);
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw SchemaError(context + ": unknown key '" + key + "'");
}

inline json parse_json(const std::string& text, const std::string& context) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SchemaError(context + ": invalid JSON");
    return j;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

// ---- basic values ----

inline json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

inline Vec3 vec3_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 3) throw SchemaError(context + ": expected [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline json mat3_to_json(const Mat3& m) { return json(m.m); }

inline Mat3 mat3_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 9) throw SchemaError(context + ": expected 9 row-major entries");
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.m[i] = j[i].get<double>();
    return m;
}

// ---- camera ----

inline json camera_to_json(const PinholeCamera& c) {
    return {{"fx", c.fx}, {"fy", c.fy}, {"cx", c.cx}, {"cy", c.cy},
            {"width", c.width}, {"height", c.height}};
}

inline PinholeCamera camera_from_json(const json& j) {
    check_keys(j, "camera", {"fx", "fy", "cx", "cy", "width", "height"});
    PinholeCamera c;
    c.fx = j["fx"].get<double>();
    c.fy = j["fy"].get<double>();
    c.cx = j["cx"].get<double>();
    c.cy = j["cy"].get<double>();
    c.width = j["width"].get<int>();
    c.height = j["height"].get<int>();
    c.validate();
    return c;
}

// ---- rigid transform ----

inline json transform_to_json(const RigidTransform& T) {
    return {{"R", mat3_to_json(T.R)}, {"t", vec3_to_json(T.t)},
            {"from", T.from_frame}, {"to", T.to_frame}};
}

inline RigidTransform transform_from_json(const json& j, const std::string& context) {
    check_keys(j, context, {"R", "t", "from", "to"});
    // 1e-6 admits rotations written with truncated decimal precision.
    return RigidTransform(mat3_from_json(j["R"], context), vec3_from_json(j["t"], context),
                          j["from"].get<std::string>(), j["to"].get<std::string>(), 1e-6);
}

// ---- grasp records ----

inline json mono_to_json(const GraspMono& g) {
    return {{"u", g.p.u}, {"v", g.p.v}, {"d", g.d}, {"w", g.w}, {"phi", g.phi},
            {"nx", vec3_to_json(g.n_x.vec())}};
}

inline GraspMono mono_from_json(const json& j) {
    check_keys(j, "grasp (mono)", {"u", "v", "d", "w", "phi", "nx"});
    GraspMono g;
    g.p = {j["u"].get<double>(), j["v"].get<double>()};
    g.d = j["d"].get<double>();
    g.w = j["w"].get<double>();
    g.phi = j["phi"].get<double>();
    g.n_x = UnitVec3(vec3_from_json(j["nx"], "grasp (mono) nx"), 1e-6);
    return g;
}

inline json se3_to_json(const GraspSE3& g) {
    return {{"R", mat3_to_json(g.R)}, {"t", vec3_to_json(g.t)}, {"frame", g.frame}};
}

inline GraspSE3 se3_from_json(const json& j) {
    check_keys(j, "grasp (se3)", {"R", "t", "frame"});
    GraspSE3 g;
    g.R = mat3_from_json(j["R"], "grasp (se3) R");
    g.t = vec3_from_json(j["t"], "grasp (se3) t");
    g.frame = j["frame"].get<std::string>();
    g.validate(1e-6);
    return g;
}

inline json l2g_to_json(const GraspL2G& g) {
    return {{"p1", vec3_to_json(g.p1)}, {"p2", vec3_to_json(g.p2)}, {"phi", g.phi},
            {"frame", g.frame}};
}

inline GraspL2G l2g_from_json(const json& j) {
    check_keys(j, "grasp (l2g)", {"p1", "p2", "phi", "frame"});
    GraspL2G g;
    g.p1 = vec3_from_json(j["p1"], "grasp (l2g) p1");
    g.p2 = vec3_from_json(j["p2"], "grasp (l2g) p2");
    g.phi = j["phi"].get<double>();
    g.frame = j["frame"].get<std::string>();
    return g;
}

inline json contactnet_to_json(const GraspContactNet& g) {
    return {{"p1", vec3_to_json(g.p1)}, {"nx", vec3_to_json(g.n_x.vec())},
            {"nz", vec3_to_json(g.n_z.vec())}, {"w", g.w}, {"frame", g.frame}};
}

inline GraspContactNet contactnet_from_json(const json& j) {
    check_keys(j, "grasp (contactnet)", {"p1", "nx", "nz", "w", "frame"});
    GraspContactNet g;
    g.p1 = vec3_from_json(j["p1"], "grasp (contactnet) p1");
    g.n_x = UnitVec3(vec3_from_json(j["nx"], "grasp (contactnet) nx"), 1e-6);
    g.n_z = UnitVec3(vec3_from_json(j["nz"], "grasp (contactnet) nz"), 1e-6);
    g.w = j["w"].get<double>();
    g.frame = j["frame"].get<std::string>();
    return g;
}

// ---- antipodal grasp labels ----

inline json antipodal_to_json(const AntipodalGrasp& g) {
    return {{"p1", vec3_to_json(g.p1)}, {"p2", vec3_to_json(g.p2)},
            {"v1", vec3_to_json(g.v1.vec())}, {"v2", vec3_to_json(g.v2.vec())},
            {"w", g.w}, {"phi_samples", g.phi_samples}, {"quality", g.quality}};
}

inline AntipodalGrasp antipodal_from_json(const json& j) {
    check_keys(j, "antipodal grasp", {"p1", "p2", "v1", "v2", "w", "phi_samples", "quality"});
    AntipodalGrasp g;
    g.p1 = vec3_from_json(j["p1"], "antipodal p1");
    g.p2 = vec3_from_json(j["p2"], "antipodal p2");
    g.v1 = UnitVec3(vec3_from_json(j["v1"], "antipodal v1"), 1e-6);
    g.v2 = UnitVec3(vec3_from_json(j["v2"], "antipodal v2"), 1e-6);
    g.w = j["w"].get<double>();
    if (!j["phi_samples"].is_array()) throw SchemaError("antipodal phi_samples: expected array");
    g.phi_samples = j["phi_samples"].get<std::vector<double>>();
    g.quality = j["quality"].get<double>();
    return g;
}

// ---- annotation records ----

inline json annotation_to_json(const AnnotationRecord& r) {
    return {{"view", r.view_index}, {"grasp_id", r.grasp_id}, {"G_cam", se3_to_json(r.g_cam)},
            {"keypoint", json::array({r.keypoint.u, r.keypoint.v})},
            {"d", r.d}, {"w", r.w}, {"phi", r.phi}, {"nx_cam", vec3_to_json(r.n_x_cam.vec())}};
}

inline AnnotationRecord annotation_from_json(const json& j) {
    check_keys(j, "annotation", {"view", "grasp_id", "G_cam", "keypoint", "d", "w", "phi", "nx_cam"});
    AnnotationRecord r;
    r.view_index = j["view"].get<int>();
    r.grasp_id = j["grasp_id"].get<std::string>();
    r.g_cam = se3_from_json(j["G_cam"]);
    if (!j["keypoint"].is_array() || j["keypoint"].size() != 2)
        throw SchemaError("annotation keypoint: expected [u, v]");
    r.keypoint = {j["keypoint"][0].get<double>(), j["keypoint"][1].get<double>()};
    r.d = j["d"].get<double>();
    r.w = j["w"].get<double>();
    r.phi = j["phi"].get<double>();
    r.n_x_cam = UnitVec3(vec3_from_json(j["nx_cam"], "annotation nx_cam"), 1e-6);
    return r;
}

// ---- configs ----

inline json tolerances_to_json(const Tolerances& t) {
    return {{"unit_norm", t.unit_norm}, {"ray_epsilon", t.ray_epsilon},
            {"degenerate_axis", t.degenerate_axis}, {"angle_slack", t.angle_slack},
            {"branch_tie", t.branch_tie}, {"min_contact_separation", t.min_contact_separation},
            {"orthogonal_frame", t.orthogonal_frame}, {"d_vis", t.d_vis}, {"w_max", t.w_max}};
}

inline Tolerances tolerances_from_json(const json& j) {
    check_keys(j, "tolerances", {},
               {"unit_norm", "ray_epsilon", "degenerate_axis", "angle_slack", "branch_tie",
                "min_contact_separation", "orthogonal_frame", "d_vis", "w_max"});
    Tolerances t;
    if (j.contains("unit_norm")) t.unit_norm = j["unit_norm"].get<double>();
    if (j.contains("ray_epsilon")) t.ray_epsilon = j["ray_epsilon"].get<double>();
    if (j.contains("degenerate_axis")) t.degenerate_axis = j["degenerate_axis"].get<double>();
    if (j.contains("angle_slack")) t.angle_slack = j["angle_slack"].get<double>();
    if (j.contains("branch_tie")) t.branch_tie = j["branch_tie"].get<double>();
    if (j.contains("min_contact_separation"))
        t.min_contact_separation = j["min_contact_separation"].get<double>();
    if (j.contains("orthogonal_frame")) t.orthogonal_frame = j["orthogonal_frame"].get<double>();
    if (j.contains("d_vis")) t.d_vis = j["d_vis"].get<double>();
    if (j.contains("w_max")) t.w_max = j["w_max"].get<double>();
    return t;
}

inline json sampler_to_json(const SamplerConfig& c) {
    return {{"mu", c.mu}, {"n_surface_samples", c.n_surface_samples}, {"w_max", c.w_max},
            {"phi_grid", c.phi_grid}, {"seed", c.seed}};
}

inline SamplerConfig sampler_from_json(const json& j) {
    check_keys(j, "sampler", {}, {"mu", "n_surface_samples", "w_max", "phi_grid", "seed"});
    SamplerConfig c;
    if (j.contains("mu")) c.mu = j["mu"].get<double>();
    if (j.contains("n_surface_samples")) c.n_surface_samples = j["n_surface_samples"].get<int>();
    if (j.contains("w_max")) c.w_max = j["w_max"].get<double>();
    if (j.contains("phi_grid")) c.phi_grid = j["phi_grid"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    c.validate();
    return c;
}

inline json gripper_to_json(const GripperModel& g) {
    return {{"finger_length", g.finger_length}, {"finger_thickness", g.finger_thickness},
            {"palm_depth", g.palm_depth}};
}

inline GripperModel gripper_from_json(const json& j) {
    check_keys(j, "gripper", {}, {"finger_length", "finger_thickness", "palm_depth"});
    GripperModel g;
    if (j.contains("finger_length")) g.finger_length = j["finger_length"].get<double>();
    if (j.contains("finger_thickness")) g.finger_thickness = j["finger_thickness"].get<double>();
    if (j.contains("palm_depth")) g.palm_depth = j["palm_depth"].get<double>();
    if (g.finger_length <= 0 || g.finger_thickness <= 0 || g.palm_depth <= 0)
        throw SchemaError("gripper: dimensions must be positive");
    return g;
}

// ---- JSON-lines ----

template <typename T, typename ToJson>
void write_jsonl(const std::string& path, const std::vector<T>& items, ToJson to_json_fn) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (const T& item : items) out << to_json_fn(item).dump() << '\n';
    if (!out) throw IoError("write failed: " + path);
}

template <typename FromJson>
auto read_jsonl(const std::string& path, FromJson from_json_fn)
    -> std::vector<decltype(from_json_fn(json{}))> {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::vector<decltype(from_json_fn(json{}))> items;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            items.push_back(from_json_fn(parse_json(line, path)));
        } catch (const SchemaError& e) {
            throw SchemaError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return items;
}

}  // namespace graspgeom
