#include "humansynth/scene.hpp"

#include <cmath>
#include <stdexcept>

#include "humansynth/asset_io.hpp"

namespace humansynth::scene {

using geom::Rotation;
using geom::Transform;
using geom::Vec3;
using rng::RngStream;

namespace {

geom::Primitive random_background_primitive(RngStream& s) {
    switch (s.uniform_int(0, 2)) {
        case 0: return geom::Primitive::box(0.5, 0.5, 0.5);
        case 1: return geom::Primitive::sphere(0.5);
        default: return geom::Primitive::cylinder(0.35, 0.5);
    }
}

std::vector<SceneObject> spawn_objects(const rng::PlacementConfig& placement,
                                       const rng::ParamRange& scale_range,
                                       std::uint64_t seed, std::uint64_t frame,
                                       const std::string& id_prefix, bool is_occluder) {
    RngStream place(seed, frame, id_prefix + "_placement");
    auto count = static_cast<std::size_t>(place.uniform_int(
        static_cast<std::int64_t>(placement.count.min),
        static_cast<std::int64_t>(placement.count.max)));
    std::vector<SceneObject> out;
    if (count == 0) return out;
    auto points = rng::poisson_disk(placement.volume, placement.separation, count, place);
    for (const Vec3& p : points) {
        SceneObject obj;
        obj.primitive = random_background_primitive(place);
        obj.transform.translation = p;
        obj.is_occluder = is_occluder;
        out.push_back(obj);
    }
    RngStream scale(seed, frame, id_prefix + "_scale");
    for (SceneObject& obj : out) {
        obj.transform.scale = {scale.uniform(scale_range), scale.uniform(scale_range),
                               scale.uniform(scale_range)};
    }
    RngStream rot(seed, frame, id_prefix + "_rotation");
    for (SceneObject& obj : out) {
        double yaw = geom::deg_to_rad(rot.uniform({0, 360}));
        double pitch = geom::deg_to_rad(rot.uniform({0, 360}));
        double roll = geom::deg_to_rad(rot.uniform({0, 360}));
        obj.transform.rotation = Rotation::from_euler_yxz(yaw, pitch, roll);
    }
    return out;
}

Vec3 sun_direction(double elevation_deg, double azimuth_deg) {
    double el = geom::deg_to_rad(elevation_deg);
    double az = geom::deg_to_rad(azimuth_deg);
    // direction light travels: downward from the given sky position
    return Vec3{-std::cos(el) * std::sin(az), -std::sin(el), -std::cos(el) * std::cos(az)}
        .normalized();
}

}  // namespace

SceneContext SceneContext::from_config(const config::ScenarioConfig& cfg) {
    SceneContext ctx;
    ctx.assets = cfg.assets == "builtin" ? human::builtin_assets()
                                         : io::load_assets_file(cfg.assets);
    ctx.clips = cfg.pose_clips == "builtin" ? human::builtin_pose_library()
                                            : io::load_clips_file(cfg.pose_clips);
    if (ctx.assets.empty()) throw std::runtime_error("scene: empty asset library");
    if (ctx.clips.empty()) throw std::runtime_error("scene: empty pose-clip library");
    return ctx;
}

SceneSpec build_frame(const config::ScenarioConfig& cfg, const SceneContext& ctx,
                      std::uint64_t seed, std::uint64_t frame) {
    const rng::RandomizerCatalog& cat = cfg.randomizers;
    SceneSpec spec;
    spec.frame_index = frame;

    // Randomizer order is pinned; every block draws from its own stream.
    auto background = spawn_objects(cat.background_placement, cat.background_scale,
                                    seed, frame, "background", false);
    auto occluders = spawn_objects(cat.occluder_placement, cat.occluder_scale, seed,
                                   frame, "occluder", true);

    {
        RngStream place(seed, frame, "foreground_placement");
        auto count = static_cast<std::size_t>(place.uniform_int(
            static_cast<std::int64_t>(cat.foreground_placement.count.min),
            static_cast<std::int64_t>(cat.foreground_placement.count.max)));
        if (count > 0) {
            auto points = rng::poisson_disk(cat.foreground_placement.volume,
                                            cat.foreground_placement.separation, count,
                                            place);
            for (const Vec3& p : points) {
                SceneHuman h;
                h.asset_index = static_cast<std::size_t>(place.uniform_int(
                    0, static_cast<std::int64_t>(ctx.assets.size()) - 1));
                h.transform.translation = p;
                spec.humans.push_back(h);
            }
        }
    }
    {
        RngStream scale(seed, frame, "foreground_scale");
        for (SceneHuman& h : spec.humans) {
            double s = scale.uniform(cat.foreground_scale);
            h.transform.scale = {s, s, s};
        }
    }
    {
        // humans rotate about Y only
        RngStream rot(seed, frame, "foreground_rotation");
        for (SceneHuman& h : spec.humans) {
            double yaw = geom::deg_to_rad(rot.uniform(cat.foreground_rotation_y));
            h.transform.rotation = Rotation::axis_angle({0, 1, 0}, yaw);
        }
    }
    {
        RngStream anim(seed, frame, "animation");
        std::vector<std::size_t> frames_per_clip;
        for (const auto& c : ctx.clips) frames_per_clip.push_back(c.frames.size());
        for (SceneHuman& h : spec.humans) {
            auto ref = rng::sample_pose_reference(frames_per_clip, anim);
            h.pose = ctx.clips[ref.clip].frames[ref.frame];
        }
    }

    // wall sits just behind the background volume, facing the camera
    {
        double wall_z = cat.background_placement.volume.hi.z + 0.4;
        spec.wall.primitive = geom::Primitive::quad(15.0, 7.5);
        spec.wall.transform.translation = {0, 3.0, wall_z};
        spec.wall.transform.rotation = Rotation::axis_angle({0, 1, 0}, geom::kPi);
    }

    {
        RngStream tex(seed, frame, "texture_hue");
        auto draw = [&](int& texture_id, double& hue) {
            texture_id = static_cast<int>(tex.uniform_int(0, cat.texture_count - 1));
            hue = tex.uniform(cat.hue_offset);
        };
        draw(spec.wall.texture_id, spec.wall.hue_offset);
        for (SceneObject& o : background) draw(o.texture_id, o.hue_offset);
        for (SceneObject& o : occluders) draw(o.texture_id, o.hue_offset);
        for (SceneHuman& h : spec.humans) h.hue_offset = tex.uniform(cat.hue_offset);
    }

    {
        RngStream sun(seed, frame, "sun");
        Light l;
        l.kind = Light::Kind::Directional;
        l.intensity = sun.uniform(cat.sun.intensity);
        double elevation = sun.uniform(cat.sun.elevation);
        double orientation = sun.uniform(cat.sun.orientation);
        l.direction = sun_direction(elevation, orientation);
        spec.lights.push_back(l);
    }

    // one moving point light plus six stationary scene point lights
    static const Vec3 kStationary[6] = {{-5, 4, -6}, {0, 4, -6}, {5, 4, -6},
                                        {-5, 4, 0},  {0, 4, 0},  {5, 4, 0}};
    {
        RngStream lc(seed, frame, "light_color_intensity");
        for (int i = 0; i < 7; ++i) {
            Light l;
            l.kind = Light::Kind::Point;
            for (double& ch : l.color) ch = lc.uniform(cat.light.color_channel);
            l.intensity = lc.uniform(cat.light.intensity);
            l.enabled = lc.bernoulli(cat.light.on_probability);
            if (i > 0) l.position = kStationary[i - 1];
            spec.lights.push_back(l);
        }
    }
    {
        RngStream lp(seed, frame, "light_position");
        Light& moving = spec.lights[1];
        const rng::Box3& v = cat.moving_light.volume;
        moving.position = {v.lo.x + (v.hi.x - v.lo.x) * lp.next_double(),
                           v.lo.y + (v.hi.y - v.lo.y) * lp.next_double(),
                           v.lo.z + (v.hi.z - v.lo.z) * lp.next_double()};
        lp.uniform(cat.moving_light.rotation);  // rotation is moot for a point light
    }

    {
        RngStream camr(seed, frame, "camera");
        const rng::Box3& v = cat.camera.position_volume;
        spec.camera.position = {v.lo.x + (v.hi.x - v.lo.x) * camr.next_double(),
                                v.lo.y + (v.hi.y - v.lo.y) * camr.next_double(),
                                v.lo.z + (v.hi.z - v.lo.z) * camr.next_double()};
        double yaw = geom::deg_to_rad(camr.uniform(cat.camera.yaw));
        double pitch = geom::deg_to_rad(camr.uniform(cat.camera.pitch));
        double roll = geom::deg_to_rad(camr.uniform(cat.camera.roll));
        spec.camera.rotation = Rotation::from_euler_yxz(yaw, pitch, roll);
        spec.camera.focal_length = camr.uniform(cat.camera.focal_length);
        spec.camera.sensor_size = 36.0;
        spec.camera.image_width = cfg.image_width;
        spec.camera.image_height = cfg.image_height;
    }

    {
        RngStream post(seed, frame, "post_process");
        spec.post.vignette_strength = post.uniform(cat.post.vignette);
        spec.post.exposure = post.uniform(cat.post.exposure);
        spec.post.contrast = post.uniform(cat.post.contrast);
        spec.post.saturation = post.uniform(cat.post.saturation);
        spec.post.white_balance_temp = post.uniform(cat.post.white_balance);
    }

    // dense instance ids: humans first, then occluders, then background
    int next_id = 1;
    for (SceneHuman& h : spec.humans) h.instance_id = next_id++;
    for (SceneObject& o : occluders) {
        o.instance_id = next_id++;
        spec.objects.push_back(o);
    }
    for (SceneObject& o : background) {
        o.instance_id = next_id++;
        spec.objects.push_back(o);
    }
    return spec;
}

}  // namespace humansynth::scene
