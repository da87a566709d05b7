#pragma once

#include <cstdint>
#include <string>

#include "humansynth/annotate.hpp"
#include "humansynth/coco.hpp"
#include "humansynth/config.hpp"
#include "humansynth/scene.hpp"

namespace humansynth::gen {

struct Summary {
    std::uint64_t frames = 0;
    double seconds = 0.0;
    double frames_per_second = 0.0;
    std::uint64_t person_annotations = 0;
    std::uint64_t occluder_annotations = 0;
    std::uint64_t keypoint_state_counts[3] = {0, 0, 0};
};

/// In-memory dataset for one frame range [first, last). Pure given the
/// config and seed; frame workers call it independently.
struct FrameResult {
    coco::CocoImage image;
    std::vector<label::AnnotationRecord> records;
};
FrameResult generate_frame(const config::ScenarioConfig& cfg, const scene::SceneContext& ctx,
                           std::uint64_t frame_index, bool shade);

/// Whole-dataset generation: frame-parallel, merged in frame order so
/// output bytes are identical for any worker count. Writes
/// annotations.json (+ images/, masks/ when enabled) under out_dir.
Summary generate_dataset(const config::ScenarioConfig& cfg, const std::string& out_dir,
                         int workers);

/// Dataset assembly without touching disk (tests, determinism checks).
coco::CocoDataset generate_in_memory(const config::ScenarioConfig& cfg, int workers,
                                     Summary* summary = nullptr);

}  // namespace humansynth::gen
