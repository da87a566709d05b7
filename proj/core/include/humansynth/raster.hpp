#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "humansynth/scene.hpp"

namespace humansynth::label {

/// Per-frame raster targets. Depth is camera-space z in meters, +Inf for
/// background. instance_id 0 is background (the wall also renders as
/// instance 0). Semantic ids: 0 background/wall, 1 person, 2 occluder or
/// background object.
struct FrameBuffers {
    int width = 0;
    int height = 0;
    std::vector<float> depth;
    std::vector<std::int32_t> instance_id;
    std::vector<std::uint8_t> semantic_id;
    std::vector<float> rgb;  // 3 floats per pixel, empty when shading is off

    FrameBuffers() = default;
    FrameBuffers(int w, int h, bool with_rgb);

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width + x;
    }
};

/// Tessellation resolutions shared by the rasterizer and the triangle
/// ray-cast oracle. Boxes and quads are exact; curved primitives use
/// these segment counts.
struct TessellationSpec {
    int sphere_slices = 32, sphere_stacks = 16;
    int capsule_slices = 24, capsule_stacks = 12;  // stacks per hemisphere half
    int cylinder_slices = 24;
};

struct Triangle {
    geom::Vec3 a, b, c;
};

/// World-space triangles for a transformed primitive.
std::vector<Triangle> tessellate(const geom::Primitive& prim, const geom::Transform& xf,
                                 const TessellationSpec& spec = {});

struct ShadedTriangleList {
    std::vector<Triangle> triangles;
    std::int32_t instance = 0;
    std::uint8_t semantic = 0;
    int texture_id = 0;
    double hue_offset = 0.0;
};

/// Every triangle batch of a scene, in draw order. The batch list (not
/// the order) determines the z-buffered result.
std::vector<ShadedTriangleList> scene_triangles(const scene::SceneSpec& scene,
                                                const scene::SceneContext& ctx,
                                                const TessellationSpec& spec = {});

/// Z-buffered rasterization of all scene primitives. `shade` controls
/// whether the RGB buffer is produced (label-only runs skip it).
FrameBuffers rasterize(const scene::SceneSpec& scene, const scene::SceneContext& ctx,
                       bool shade = false, const TessellationSpec& spec = {});

/// Rasterize a pre-tessellated batch list (shared by tests and oracle).
FrameBuffers rasterize_triangles(const std::vector<ShadedTriangleList>& batches,
                                 const scene::SceneSpec& scene, bool shade);

/// Deterministic pixel post-processing; annotations never depend on it.
void post_process(FrameBuffers& buffers, const scene::PostParams& params);

}  // namespace humansynth::label
