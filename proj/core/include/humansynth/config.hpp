#pragma once

#include <string>
#include <vector>

#include "humansynth/catalog.hpp"

namespace humansynth::config {

enum class LabelingScheme { VisibleOnly, VisibleAndOccluded, AllObjects };

std::string to_string(LabelingScheme s);
LabelingScheme scheme_from_string(const std::string& s);

struct ScenarioConfig {
    int schema_version = 1;
    std::uint64_t seed = 0;
    int frame_count = 1;
    int image_width = 640;
    int image_height = 640;
    bool emit_images = false;
    bool emit_masks = false;
    LabelingScheme scheme = LabelingScheme::VisibleOnly;
    bool self_occlusion = true;
    std::string assets = "builtin";       // or path to an asset JSON file
    std::string pose_clips = "builtin";   // or path to a pose-clip JSON file
    rng::RandomizerCatalog randomizers;
};

/// All violations, not just the first; empty means valid.
std::vector<std::string> validate_config(const ScenarioConfig& cfg);

/// Strict JSON loader: unknown keys are rejected, missing keys fall back
/// to defaults. Throws std::runtime_error with a field path on malformed
/// input.
ScenarioConfig load_config(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);

/// Serialization of the full config (used by `validate --print` and to
/// ship the documented default file).
std::string config_to_json(const ScenarioConfig& cfg);

}  // namespace humansynth::config
