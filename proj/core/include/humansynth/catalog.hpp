#pragma once

#include "humansynth/rng.hpp"

namespace humansynth::rng {

struct PlacementConfig {
    Box3 volume;
    double separation = 1.0;  // m, Poisson-disk minimum distance
    ParamRange count{0, 0};   // integer-valued inclusive range
};

struct SunConfig {
    ParamRange intensity{0.4, 1.2};
    ParamRange elevation{20, 80};    // degrees above horizon
    ParamRange orientation{0, 360};  // azimuth, degrees
};

struct LightConfig {
    ParamRange intensity{0.5, 3.0};
    ParamRange color_channel{0.35, 1.0};  // per RGB channel
    double on_probability = 0.8;
};

struct MovingLightConfig {
    Box3 volume{{-4, 2, -6}, {4, 5, 2}};
    ParamRange rotation{0, 360};
};

struct CameraConfig {
    Box3 position_volume{{-1.5, 0.5, -9.0}, {1.5, 2.0, -7.0}};
    ParamRange yaw{-12, 12};    // degrees
    ParamRange pitch{-8, 8};
    ParamRange roll{-4, 4};
    ParamRange focal_length{18, 60};  // mm
};

struct PostConfig {
    ParamRange vignette{0.0, 0.6};
    ParamRange exposure{-0.8, 0.8};      // EV
    ParamRange contrast{0.85, 1.2};
    ParamRange saturation{0.7, 1.3};
    ParamRange white_balance{-0.15, 0.15};
};

/// One configuration block per randomizer, applied per frame in the
/// pinned order (see scene::build_frame). All values sample uniformly.
/// Shipped defaults are this project's own choices, not a reproduction
/// of any published parameter table.
struct RandomizerCatalog {
    PlacementConfig background_placement{
        {{-6, 0, 2.2}, {6, 5, 3.6}}, 0.7, {2, 10}};
    PlacementConfig occluder_placement{
        {{-4, 0, -4.5}, {4, 3, 0.5}}, 0.6, {0, 6}};
    PlacementConfig foreground_placement{
        {{-3.5, 0.85, -2.5}, {3.5, 1.05, 1.5}}, 0.8, {1, 6}};

    ParamRange background_scale{0.6, 2.2};
    ParamRange occluder_scale{0.5, 1.8};
    ParamRange foreground_scale{0.85, 1.15};
    ParamRange foreground_rotation_y{0, 360};

    int texture_count = 8;
    ParamRange hue_offset{-180, 180};  // degrees

    SunConfig sun;
    LightConfig light;
    MovingLightConfig moving_light;
    CameraConfig camera;
    PostConfig post;
};

}  // namespace humansynth::rng
