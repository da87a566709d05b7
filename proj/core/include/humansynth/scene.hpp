#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "humansynth/config.hpp"
#include "humansynth/geometry.hpp"
#include "humansynth/humanoid.hpp"

namespace humansynth::scene {

struct Light {
    enum class Kind { Directional, Point };
    Kind kind = Kind::Point;
    geom::Vec3 position{0, 0, 0};   // point lights
    geom::Vec3 direction{0, -1, 0}; // directional light, unit
    double color[3] = {1, 1, 1};
    double intensity = 1.0;
    bool enabled = true;
};

struct PostParams {
    double exposure = 0.0;       // EV offset; 0 is identity
    double contrast = 1.0;       // about mid-gray
    double saturation = 1.0;
    double vignette_strength = 0.0;
    double white_balance_temp = 0.0;  // warm/cool channel-gain offset

    bool neutral() const {
        return exposure == 0.0 && contrast == 1.0 && saturation == 1.0 &&
               vignette_strength == 0.0 && white_balance_temp == 0.0;
    }
};

struct SceneObject {
    geom::Primitive primitive;
    geom::Transform transform;
    int texture_id = 0;
    double hue_offset = 0.0;
    int instance_id = 0;
    bool is_occluder = true;  // false for background-wall-zone objects
};

struct SceneHuman {
    std::size_t asset_index = 0;
    human::Pose pose;
    geom::Transform transform;
    int instance_id = 0;
    int texture_id = 0;
    double hue_offset = 0.0;
};

struct Wall {
    geom::Primitive primitive;
    geom::Transform transform;
    int texture_id = 0;
    double hue_offset = 0.0;
};

/// One frame's fully resolved world. Instance ids are dense from 1:
/// humans first, then occluders and background objects.
struct SceneSpec {
    std::uint64_t frame_index = 0;
    geom::CameraModel camera;
    std::vector<Light> lights;  // [0] sun, [1] moving point, [2..7] stationary
    Wall wall;
    std::vector<SceneHuman> humans;
    std::vector<SceneObject> objects;
    PostParams post;
};

/// Immutable per-run context shared by all frame workers.
struct SceneContext {
    std::vector<human::HumanAsset> assets;
    std::vector<human::PoseClip> clips;

    static SceneContext from_config(const config::ScenarioConfig& cfg);
};

/// Deterministic frame assembly: randomizers run in a pinned order, each
/// drawing from its own stream keyed by (seed, frame, randomizer id).
SceneSpec build_frame(const config::ScenarioConfig& cfg, const SceneContext& ctx,
                      std::uint64_t master_seed, std::uint64_t frame_index);

}  // namespace humansynth::scene
