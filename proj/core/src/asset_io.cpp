#include "humansynth/asset_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace humansynth::io {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

namespace {

geom::Vec3 vec3_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error(where + ": expected [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

geom::Rotation quat_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 4)
        throw std::runtime_error(where + ": expected [w, x, y, z]");
    return geom::Rotation{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                          j[3].get<double>()}
        .normalized();
}

}  // namespace

std::vector<human::HumanAsset> load_assets_json(const std::string& json_text) {
    json root = json::parse(json_text);
    if (!root.contains("assets") || !root["assets"].is_array())
        throw std::runtime_error("assets: missing top-level 'assets' array");
    std::vector<human::HumanAsset> out;
    for (std::size_t ai = 0; ai < root["assets"].size(); ++ai) {
        const json& ja = root["assets"][ai];
        std::string where = "assets[" + std::to_string(ai) + "]";
        human::HumanAsset a;
        a.name = ja.value("name", "asset_" + std::to_string(ai));
        a.height_scale = ja.value("height_scale", 1.0);
        a.clothing_hue = ja.value("clothing_hue", 0.0);
        a.default_self_occlusion_distance =
            ja.value("default_self_occlusion_distance", 0.15);
        if (ja.contains("self_occlusion_distance"))
            for (auto& [k, v] : ja["self_occlusion_distance"].items())
                a.self_occlusion_distance[k] = v.get<double>();
        if (!ja.contains("skeleton")) throw std::runtime_error(where + ": missing skeleton");
        for (const json& jj : ja["skeleton"]) {
            human::Joint j;
            j.name = jj.at("name").get<std::string>();
            std::string parent = jj.value("parent", "");
            j.parent = parent.empty() ? -1 : a.skeleton.index_of(parent);
            if (!parent.empty() && j.parent < 0)
                throw std::runtime_error(where + ": parent not defined before child: " + parent);
            j.rest_offset = vec3_from(jj.at("offset"), where + ".skeleton.offset");
            a.skeleton.joints.push_back(j);
        }
        for (const std::string& kp : human::coco_keypoint_names())
            if (!a.skeleton.contains(kp))
                throw std::runtime_error(where + ": skeleton missing COCO keypoint " + kp);
        if (!ja.contains("capsules")) throw std::runtime_error(where + ": missing capsules");
        for (const json& jc : ja["capsules"]) {
            human::BoneCapsule c;
            c.joint_a = jc.at("a").get<std::string>();
            c.joint_b = jc.at("b").get<std::string>();
            c.radius = jc.at("radius").get<double>();
            if (c.radius <= 0) throw std::runtime_error(where + ": capsule radius must be > 0");
            if (!a.skeleton.contains(c.joint_a) || !a.skeleton.contains(c.joint_b))
                throw std::runtime_error(where + ": capsule references unknown joint");
            a.bone_capsules.push_back(c);
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<human::HumanAsset> load_assets_file(const std::string& path) {
    return load_assets_json(read_text_file(path));
}

std::string assets_to_json(const std::vector<human::HumanAsset>& assets) {
    json root;
    root["assets"] = json::array();
    for (const auto& a : assets) {
        json ja;
        ja["name"] = a.name;
        ja["height_scale"] = a.height_scale;
        ja["clothing_hue"] = a.clothing_hue;
        ja["default_self_occlusion_distance"] = a.default_self_occlusion_distance;
        json jso = json::object();
        for (const auto& [k, v] : a.self_occlusion_distance) jso[k] = v;
        ja["self_occlusion_distance"] = jso;
        ja["skeleton"] = json::array();
        for (const auto& j : a.skeleton.joints) {
            json jj;
            jj["name"] = j.name;
            jj["parent"] = j.parent < 0 ? "" : a.skeleton.joints[j.parent].name;
            jj["offset"] = {j.rest_offset.x, j.rest_offset.y, j.rest_offset.z};
            ja["skeleton"].push_back(jj);
        }
        ja["capsules"] = json::array();
        for (const auto& c : a.bone_capsules)
            ja["capsules"].push_back({{"a", c.joint_a}, {"b", c.joint_b}, {"radius", c.radius}});
        root["assets"].push_back(ja);
    }
    return root.dump(2);
}

std::vector<human::PoseClip> load_clips_json(const std::string& json_text) {
    json root = json::parse(json_text);
    if (!root.contains("clips") || !root["clips"].is_array())
        throw std::runtime_error("clips: missing top-level 'clips' array");
    std::vector<human::PoseClip> out;
    for (std::size_t ci = 0; ci < root["clips"].size(); ++ci) {
        const json& jc = root["clips"][ci];
        std::string where = "clips[" + std::to_string(ci) + "]";
        human::PoseClip clip;
        clip.name = jc.value("name", "clip_" + std::to_string(ci));
        clip.fps = jc.value("fps", 8.0);
        if (!jc.contains("frames") || jc["frames"].empty())
            throw std::runtime_error(where + ": clip needs at least one frame");
        for (const json& jf : jc["frames"]) {
            human::Pose pose;
            pose.root_translation = vec3_from(jf.at("root"), where + ".root");
            for (const json& jq : jf.at("rotations"))
                pose.local_rotation.push_back(quat_from(jq, where + ".rotations"));
            clip.frames.push_back(std::move(pose));
        }
        out.push_back(std::move(clip));
    }
    return out;
}

std::vector<human::PoseClip> load_clips_file(const std::string& path) {
    return load_clips_json(read_text_file(path));
}

std::string clips_to_json(const std::vector<human::PoseClip>& clips) {
    json root;
    root["clips"] = json::array();
    for (const auto& c : clips) {
        json jc;
        jc["name"] = c.name;
        jc["fps"] = c.fps;
        jc["frames"] = json::array();
        for (const auto& f : c.frames) {
            json jf;
            jf["root"] = {f.root_translation.x, f.root_translation.y, f.root_translation.z};
            jf["rotations"] = json::array();
            for (const auto& r : f.local_rotation)
                jf["rotations"].push_back({r.w, r.x, r.y, r.z});
            jc["frames"].push_back(jf);
        }
        root["clips"].push_back(jc);
    }
    return root.dump(2);
}

}  // namespace humansynth::io
