#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "humansynth/coco.hpp"
#include "humansynth/raster.hpp"

namespace humansynth::label {

using config::LabelingScheme;

struct KeypointLabel {
    double u = 0.0;
    double v = 0.0;
    int state = 0;  // 0 unlabeled, 1 occluded, 2 visible
};

struct AnnotationRecord {
    int instance_id = 0;
    std::string category;  // "person" or "occluder"
    coco::BBox bbox;
    std::vector<std::array<double, 3>> bbox3d;  // 8 world-space corners
    std::vector<KeypointLabel> keypoints;       // 17 entries for persons
    int num_keypoints = 0;
    double area = 0.0;
    coco::RleMask mask;
};

/// Keypoint visibility against the rendered depth/instance buffers.
/// Out of frame or behind the camera: state 0 at (0, 0). Behind another
/// instance's surface: state 1. Behind its own surface by more than the
/// self-occlusion distance (when enabled): state 1, else 2.
KeypointLabel classify_keypoint(const geom::Vec3& kp_world, int kp_instance,
                                const FrameBuffers& buffers, const geom::CameraModel& cam,
                                double self_occlusion_distance, bool self_occlusion_enabled);

/// Tight pixel bounds of the instance's mask, nullopt when it covers no
/// pixels.
std::optional<coco::BBox> extract_bbox(const FrameBuffers& buffers, int instance_id);

/// All annotation records for one rendered frame under a labeling
/// scheme. iscrowd is always 0 downstream.
std::vector<AnnotationRecord> annotate_frame(const scene::SceneSpec& scene,
                                             const scene::SceneContext& ctx,
                                             const FrameBuffers& buffers,
                                             LabelingScheme scheme,
                                             bool self_occlusion_enabled);

}  // namespace humansynth::label
