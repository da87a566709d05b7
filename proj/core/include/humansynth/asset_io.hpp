#pragma once

#include <string>
#include <vector>

#include "humansynth/humanoid.hpp"

namespace humansynth::io {

/// JSON asset / pose-clip files let users bring their own humanoids.
/// Schemas are documented in the README; loaders throw
/// std::runtime_error with a field path on malformed input.
std::vector<human::HumanAsset> load_assets_json(const std::string& json_text);
std::vector<human::HumanAsset> load_assets_file(const std::string& path);
std::string assets_to_json(const std::vector<human::HumanAsset>& assets);

std::vector<human::PoseClip> load_clips_json(const std::string& json_text);
std::vector<human::PoseClip> load_clips_file(const std::string& path);
std::string clips_to_json(const std::vector<human::PoseClip>& clips);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace humansynth::io
