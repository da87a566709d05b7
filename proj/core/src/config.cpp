#include "humansynth/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "humansynth/asset_io.hpp"

namespace humansynth::config {

using json = nlohmann::ordered_json;

std::string to_string(LabelingScheme s) {
    switch (s) {
        case LabelingScheme::VisibleOnly: return "visible_only";
        case LabelingScheme::VisibleAndOccluded: return "visible_and_occluded";
        case LabelingScheme::AllObjects: return "all_objects";
    }
    return "visible_only";
}

LabelingScheme scheme_from_string(const std::string& s) {
    if (s == "visible_only") return LabelingScheme::VisibleOnly;
    if (s == "visible_and_occluded") return LabelingScheme::VisibleAndOccluded;
    if (s == "all_objects") return LabelingScheme::AllObjects;
    throw std::runtime_error("unknown labeling_scheme: " + s);
}

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw std::runtime_error("unknown field '" + where + "." + key + "'");
}

rng::ParamRange range_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error(where + ": expected [min, max]");
    return {j[0].get<double>(), j[1].get<double>()};
}

rng::Box3 box_from(const json& j, const std::string& where) {
    require_keys(j, {"lo", "hi"}, where);
    auto v3 = [&](const json& a, const char* k) {
        if (!a.is_array() || a.size() != 3)
            throw std::runtime_error(where + "." + k + ": expected [x, y, z]");
        return geom::Vec3{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
    };
    return {v3(j.at("lo"), "lo"), v3(j.at("hi"), "hi")};
}

void load_placement(const json& j, rng::PlacementConfig& p, const std::string& where) {
    require_keys(j, {"volume", "separation", "count"}, where);
    if (j.contains("volume")) p.volume = box_from(j["volume"], where + ".volume");
    if (j.contains("separation")) p.separation = j["separation"].get<double>();
    if (j.contains("count")) p.count = range_from(j["count"], where + ".count");
}

json placement_to_json(const rng::PlacementConfig& p) {
    return {{"volume",
             {{"lo", {p.volume.lo.x, p.volume.lo.y, p.volume.lo.z}},
              {"hi", {p.volume.hi.x, p.volume.hi.y, p.volume.hi.z}}}},
            {"separation", p.separation},
            {"count", {p.count.min, p.count.max}}};
}

json range_to_json(const rng::ParamRange& r) { return {r.min, r.max}; }

void load_randomizers(const json& j, rng::RandomizerCatalog& cat) {
    const std::string w = "randomizers";
    require_keys(j, {"background_placement", "occluder_placement", "foreground_placement",
                     "background_scale", "occluder_scale", "foreground_scale",
                     "foreground_rotation_y", "texture_count", "hue_offset", "sun",
                     "light", "moving_light", "camera", "post"},
                 w);
    if (j.contains("background_placement"))
        load_placement(j["background_placement"], cat.background_placement,
                       w + ".background_placement");
    if (j.contains("occluder_placement"))
        load_placement(j["occluder_placement"], cat.occluder_placement,
                       w + ".occluder_placement");
    if (j.contains("foreground_placement"))
        load_placement(j["foreground_placement"], cat.foreground_placement,
                       w + ".foreground_placement");
    if (j.contains("background_scale"))
        cat.background_scale = range_from(j["background_scale"], w + ".background_scale");
    if (j.contains("occluder_scale"))
        cat.occluder_scale = range_from(j["occluder_scale"], w + ".occluder_scale");
    if (j.contains("foreground_scale"))
        cat.foreground_scale = range_from(j["foreground_scale"], w + ".foreground_scale");
    if (j.contains("foreground_rotation_y"))
        cat.foreground_rotation_y =
            range_from(j["foreground_rotation_y"], w + ".foreground_rotation_y");
    if (j.contains("texture_count")) cat.texture_count = j["texture_count"].get<int>();
    if (j.contains("hue_offset"))
        cat.hue_offset = range_from(j["hue_offset"], w + ".hue_offset");
    if (j.contains("sun")) {
        const json& s = j["sun"];
        require_keys(s, {"intensity", "elevation", "orientation"}, w + ".sun");
        if (s.contains("intensity"))
            cat.sun.intensity = range_from(s["intensity"], w + ".sun.intensity");
        if (s.contains("elevation"))
            cat.sun.elevation = range_from(s["elevation"], w + ".sun.elevation");
        if (s.contains("orientation"))
            cat.sun.orientation = range_from(s["orientation"], w + ".sun.orientation");
    }
    if (j.contains("light")) {
        const json& l = j["light"];
        require_keys(l, {"intensity", "color_channel", "on_probability"}, w + ".light");
        if (l.contains("intensity"))
            cat.light.intensity = range_from(l["intensity"], w + ".light.intensity");
        if (l.contains("color_channel"))
            cat.light.color_channel =
                range_from(l["color_channel"], w + ".light.color_channel");
        if (l.contains("on_probability"))
            cat.light.on_probability = l["on_probability"].get<double>();
    }
    if (j.contains("moving_light")) {
        const json& m = j["moving_light"];
        require_keys(m, {"volume", "rotation"}, w + ".moving_light");
        if (m.contains("volume"))
            cat.moving_light.volume = box_from(m["volume"], w + ".moving_light.volume");
        if (m.contains("rotation"))
            cat.moving_light.rotation =
                range_from(m["rotation"], w + ".moving_light.rotation");
    }
    if (j.contains("camera")) {
        const json& c = j["camera"];
        require_keys(c, {"position_volume", "yaw", "pitch", "roll", "focal_length"},
                     w + ".camera");
        if (c.contains("position_volume"))
            cat.camera.position_volume =
                box_from(c["position_volume"], w + ".camera.position_volume");
        if (c.contains("yaw")) cat.camera.yaw = range_from(c["yaw"], w + ".camera.yaw");
        if (c.contains("pitch"))
            cat.camera.pitch = range_from(c["pitch"], w + ".camera.pitch");
        if (c.contains("roll")) cat.camera.roll = range_from(c["roll"], w + ".camera.roll");
        if (c.contains("focal_length"))
            cat.camera.focal_length =
                range_from(c["focal_length"], w + ".camera.focal_length");
    }
    if (j.contains("post")) {
        const json& p = j["post"];
        require_keys(p, {"vignette", "exposure", "contrast", "saturation", "white_balance"},
                     w + ".post");
        if (p.contains("vignette"))
            cat.post.vignette = range_from(p["vignette"], w + ".post.vignette");
        if (p.contains("exposure"))
            cat.post.exposure = range_from(p["exposure"], w + ".post.exposure");
        if (p.contains("contrast"))
            cat.post.contrast = range_from(p["contrast"], w + ".post.contrast");
        if (p.contains("saturation"))
            cat.post.saturation = range_from(p["saturation"], w + ".post.saturation");
        if (p.contains("white_balance"))
            cat.post.white_balance =
                range_from(p["white_balance"], w + ".post.white_balance");
    }
}

}  // namespace

ScenarioConfig load_config(const std::string& json_text) {
    json root = json::parse(json_text);
    require_keys(root,
                 {"schema_version", "seed", "frame_count", "image_width", "image_height",
                  "emit_images", "emit_masks", "labeling_scheme", "self_occlusion",
                  "assets", "pose_clips", "randomizers"},
                 "config");
    ScenarioConfig cfg;
    if (root.contains("schema_version")) cfg.schema_version = root["schema_version"].get<int>();
    if (cfg.schema_version != 1)
        throw std::runtime_error("unsupported schema_version (expected 1)");
    if (root.contains("seed")) cfg.seed = root["seed"].get<std::uint64_t>();
    if (root.contains("frame_count")) cfg.frame_count = root["frame_count"].get<int>();
    if (root.contains("image_width")) cfg.image_width = root["image_width"].get<int>();
    if (root.contains("image_height")) cfg.image_height = root["image_height"].get<int>();
    if (root.contains("emit_images")) cfg.emit_images = root["emit_images"].get<bool>();
    if (root.contains("emit_masks")) cfg.emit_masks = root["emit_masks"].get<bool>();
    if (root.contains("labeling_scheme"))
        cfg.scheme = scheme_from_string(root["labeling_scheme"].get<std::string>());
    if (root.contains("self_occlusion")) cfg.self_occlusion = root["self_occlusion"].get<bool>();
    if (root.contains("assets")) cfg.assets = root["assets"].get<std::string>();
    if (root.contains("pose_clips")) cfg.pose_clips = root["pose_clips"].get<std::string>();
    if (root.contains("randomizers")) load_randomizers(root["randomizers"], cfg.randomizers);
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    return load_config(io::read_text_file(path));
}

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
    std::vector<std::string> v;
    auto check_range = [&](const rng::ParamRange& r, const std::string& path) {
        if (!(r.min <= r.max)) v.push_back(path + ": min > max");
        if (!std::isfinite(r.min) || !std::isfinite(r.max))
            v.push_back(path + ": non-finite bound");
    };
    auto check_placement = [&](const rng::PlacementConfig& p, const std::string& path) {
        if (!(p.separation > 0)) v.push_back(path + ".separation: must be > 0");
        check_range(p.count, path + ".count");
        if (p.count.min < 0) v.push_back(path + ".count: must be >= 0");
        const auto& b = p.volume;
        if (b.lo.x > b.hi.x || b.lo.y > b.hi.y || b.lo.z > b.hi.z)
            v.push_back(path + ".volume: lo exceeds hi");
    };

    if (cfg.frame_count < 1) v.push_back("frame_count: must be >= 1");
    if (cfg.image_width < 1 || cfg.image_height < 1)
        v.push_back("image_width/image_height: must be >= 1");

    const auto& cat = cfg.randomizers;
    check_placement(cat.background_placement, "randomizers.background_placement");
    check_placement(cat.occluder_placement, "randomizers.occluder_placement");
    check_placement(cat.foreground_placement, "randomizers.foreground_placement");
    check_range(cat.background_scale, "randomizers.background_scale");
    check_range(cat.occluder_scale, "randomizers.occluder_scale");
    check_range(cat.foreground_scale, "randomizers.foreground_scale");
    if (cat.foreground_scale.min <= 0)
        v.push_back("randomizers.foreground_scale: must be > 0");
    if (cat.background_scale.min <= 0)
        v.push_back("randomizers.background_scale: must be > 0");
    if (cat.occluder_scale.min <= 0) v.push_back("randomizers.occluder_scale: must be > 0");
    check_range(cat.foreground_rotation_y, "randomizers.foreground_rotation_y");
    if (cat.texture_count < 1) v.push_back("randomizers.texture_count: must be >= 1");
    check_range(cat.hue_offset, "randomizers.hue_offset");
    check_range(cat.sun.intensity, "randomizers.sun.intensity");
    check_range(cat.sun.elevation, "randomizers.sun.elevation");
    check_range(cat.sun.orientation, "randomizers.sun.orientation");
    check_range(cat.light.intensity, "randomizers.light.intensity");
    check_range(cat.light.color_channel, "randomizers.light.color_channel");
    if (cat.light.on_probability < 0 || cat.light.on_probability > 1)
        v.push_back("randomizers.light.on_probability: must be in [0,1]");
    check_range(cat.camera.yaw, "randomizers.camera.yaw");
    check_range(cat.camera.pitch, "randomizers.camera.pitch");
    check_range(cat.camera.roll, "randomizers.camera.roll");
    check_range(cat.camera.focal_length, "randomizers.camera.focal_length");
    if (cat.camera.focal_length.min <= 0)
        v.push_back("randomizers.camera.focal_length: must be > 0");
    check_range(cat.post.vignette, "randomizers.post.vignette");
    check_range(cat.post.exposure, "randomizers.post.exposure");
    check_range(cat.post.contrast, "randomizers.post.contrast");
    check_range(cat.post.saturation, "randomizers.post.saturation");
    check_range(cat.post.white_balance, "randomizers.post.white_balance");

    // asset / clip libraries must be non-empty; builtin always is
    try {
        auto assets = cfg.assets == "builtin" ? human::builtin_assets()
                                              : io::load_assets_file(cfg.assets);
        if (assets.empty()) v.push_back("assets: empty asset library");
    } catch (const std::exception& e) {
        v.push_back(std::string("assets: ") + e.what());
    }
    try {
        auto clips = cfg.pose_clips == "builtin" ? human::builtin_pose_library()
                                                 : io::load_clips_file(cfg.pose_clips);
        if (clips.empty()) v.push_back("pose_clips: empty pose-clip library");
        for (const auto& c : clips)
            if (c.frames.empty()) v.push_back("pose_clips: clip '" + c.name + "' has no frames");
    } catch (const std::exception& e) {
        v.push_back(std::string("pose_clips: ") + e.what());
    }
    return v;
}

std::string config_to_json(const ScenarioConfig& cfg) {
    json root;
    root["schema_version"] = cfg.schema_version;
    root["seed"] = cfg.seed;
    root["frame_count"] = cfg.frame_count;
    root["image_width"] = cfg.image_width;
    root["image_height"] = cfg.image_height;
    root["emit_images"] = cfg.emit_images;
    root["emit_masks"] = cfg.emit_masks;
    root["labeling_scheme"] = to_string(cfg.scheme);
    root["self_occlusion"] = cfg.self_occlusion;
    root["assets"] = cfg.assets;
    root["pose_clips"] = cfg.pose_clips;

    const auto& cat = cfg.randomizers;
    json r;
    r["background_placement"] = placement_to_json(cat.background_placement);
    r["occluder_placement"] = placement_to_json(cat.occluder_placement);
    r["foreground_placement"] = placement_to_json(cat.foreground_placement);
    r["background_scale"] = range_to_json(cat.background_scale);
    r["occluder_scale"] = range_to_json(cat.occluder_scale);
    r["foreground_scale"] = range_to_json(cat.foreground_scale);
    r["foreground_rotation_y"] = range_to_json(cat.foreground_rotation_y);
    r["texture_count"] = cat.texture_count;
    r["hue_offset"] = range_to_json(cat.hue_offset);
    r["sun"] = {{"intensity", range_to_json(cat.sun.intensity)},
                {"elevation", range_to_json(cat.sun.elevation)},
                {"orientation", range_to_json(cat.sun.orientation)}};
    r["light"] = {{"intensity", range_to_json(cat.light.intensity)},
                  {"color_channel", range_to_json(cat.light.color_channel)},
                  {"on_probability", cat.light.on_probability}};
    r["moving_light"] = {
        {"volume",
         {{"lo",
           {cat.moving_light.volume.lo.x, cat.moving_light.volume.lo.y,
            cat.moving_light.volume.lo.z}},
          {"hi",
           {cat.moving_light.volume.hi.x, cat.moving_light.volume.hi.y,
            cat.moving_light.volume.hi.z}}}},
        {"rotation", range_to_json(cat.moving_light.rotation)}};
    r["camera"] = {
        {"position_volume",
         {{"lo",
           {cat.camera.position_volume.lo.x, cat.camera.position_volume.lo.y,
            cat.camera.position_volume.lo.z}},
          {"hi",
           {cat.camera.position_volume.hi.x, cat.camera.position_volume.hi.y,
            cat.camera.position_volume.hi.z}}}},
        {"yaw", range_to_json(cat.camera.yaw)},
        {"pitch", range_to_json(cat.camera.pitch)},
        {"roll", range_to_json(cat.camera.roll)},
        {"focal_length", range_to_json(cat.camera.focal_length)}};
    r["post"] = {{"vignette", range_to_json(cat.post.vignette)},
                 {"exposure", range_to_json(cat.post.exposure)},
                 {"contrast", range_to_json(cat.post.contrast)},
                 {"saturation", range_to_json(cat.post.saturation)},
                 {"white_balance", range_to_json(cat.post.white_balance)}};
    root["randomizers"] = r;
    return root.dump(2);
}

}  // namespace humansynth::config
