#pragma once

#include <filesystem>
#include <string>

#include "graspgeom/mesh_io.hpp"
#include "graspgeom/scene.hpp"
#include "graspgeom/serialization.hpp"

namespace graspgeom {

namespace detail {

inline std::string resolve_ref(const std::filesystem::path& base_dir, const std::string& ref) {
    const std::filesystem::path p(ref);
    return p.is_absolute() ? p.string() : (base_dir / p).string();
}

inline SceneObject scene_object_from_json(const json& j, const std::filesystem::path& base_dir,
                                          const std::string& context) {
    check_keys(j, context, {"name", "mesh", "T_base_obj"});
    SceneObject obj;
    obj.name = j["name"].get<std::string>();
    obj.mesh_ref = j["mesh"].get<std::string>();
    obj.T_base_obj = transform_from_json(j["T_base_obj"], context + " T_base_obj");
    if (obj.T_base_obj.to_frame != "base")
        throw SchemaError(context + ": T_base_obj must map into frame 'base'");
    obj.mesh = load_mesh(resolve_ref(base_dir, obj.mesh_ref));
    return obj;
}

}  // namespace detail

// Scene description: meshes are resolved relative to the config file.
//
// {
//   "depth_scale": 0.0001,
//   "objects":    [{"name", "mesh", "T_base_obj"}...],
//   "background": [{"name", "mesh", "T_base_obj"}...],
//   "views":      [{"name", "camera", "T_cam_base", "depth"}...]
// }
inline Scene load_scene(const std::string& path) {
    const json j = load_json_file(path);
    check_keys(j, path, {"objects", "views"}, {"background", "depth_scale"});
    const std::filesystem::path base_dir = std::filesystem::path(path).parent_path();

    Scene scene;
    scene.base_dir = base_dir.string();
    if (j.contains("depth_scale")) scene.depth_scale = j["depth_scale"].get<double>();
    for (const json& jo : j["objects"])
        scene.objects.push_back(detail::scene_object_from_json(jo, base_dir, path + " object"));
    if (j.contains("background"))
        for (const json& jo : j["background"])
            scene.background.push_back(detail::scene_object_from_json(jo, base_dir, path + " background"));
    for (const json& jv : j["views"]) {
        check_keys(jv, path + " view", {"name", "camera", "T_cam_base", "depth"});
        SceneView view;
        view.name = jv["name"].get<std::string>();
        view.camera = camera_from_json(jv["camera"]);
        view.T_cam_base = transform_from_json(jv["T_cam_base"], path + " T_cam_base");
        if (view.T_cam_base.from_frame != "base")
            throw SchemaError(path + ": T_cam_base must map from frame 'base'");
        // Kept unresolved so downstream records stay relocatable; resolve
        // against Scene::base_dir when reading.
        view.depth_ref = jv["depth"].get<std::string>();
        scene.views.push_back(std::move(view));
    }
    if (scene.objects.empty()) throw SchemaError(path + ": scene needs at least one object");
    if (scene.views.empty()) throw SchemaError(path + ": scene needs at least one view");
    return scene;
}

inline std::string resolve_scene_ref(const Scene& scene, const std::string& ref) {
    return detail::resolve_ref(scene.base_dir, ref);
}

// View records as written into an annotation directory's views.json.

inline json view_to_json(const SceneView& v) {
    return {{"name", v.name}, {"camera", camera_to_json(v.camera)},
            {"T_cam_base", transform_to_json(v.T_cam_base)}, {"depth", v.depth_ref}};
}

inline SceneView view_from_json(const json& j) {
    check_keys(j, "view", {"name", "camera", "T_cam_base", "depth"});
    SceneView v;
    v.name = j["name"].get<std::string>();
    v.camera = camera_from_json(j["camera"]);
    v.T_cam_base = transform_from_json(j["T_cam_base"], "view T_cam_base");
    v.depth_ref = j["depth"].get<std::string>();
    return v;
}

}  // namespace graspgeom
