#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace humansynth::coco {

/// COCO-style RLE: column-major run lengths alternating background /
/// foreground, starting with background. sum(counts) == h * w.
struct RleMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint32_t> counts;
};

/// Bitmap is row-major, one byte per pixel (0/1), h*w entries.
RleMask rle_encode(const std::vector<std::uint8_t>& bitmap, int height, int width);
std::vector<std::uint8_t> rle_decode(const RleMask& mask);

/// Foreground pixel count straight from the runs.
std::uint64_t rle_area(const RleMask& mask);

/// Tight (x, y, w, h) bounds of the foreground, nullopt when empty.
struct BBox {
    double x = 0, y = 0, w = 0, h = 0;
};
std::optional<BBox> rle_bbox(const RleMask& mask);

struct CocoImage {
    std::int64_t id = 0;
    int width = 0;
    int height = 0;
    std::string file_name;
};

struct CocoAnnotation {
    std::int64_t id = 0;
    std::int64_t image_id = 0;
    int category_id = 1;
    BBox bbox;
    double area = 0.0;
    int iscrowd = 0;  // never 1 in this generator
    std::vector<double> keypoints;  // 17 x (u, v, v_state); empty for non-person
    int num_keypoints = 0;
    std::optional<RleMask> segmentation;
    std::vector<std::vector<double>> bbox3d;  // 8 world-space corners, optional
};

struct CocoCategory {
    int id = 1;
    std::string name = "person";
    std::string supercategory = "person";
    std::vector<std::string> keypoints;
    std::vector<std::pair<int, int>> skeleton;
};

struct CocoDataset {
    std::string description = "synthetic humans";
    std::vector<CocoImage> images;
    std::vector<CocoAnnotation> annotations;
    std::vector<CocoCategory> categories;
};

/// Person + occluder categories with the standard keypoint name list.
std::vector<CocoCategory> default_categories();

/// Deterministic serialization: fixed field order, coordinates printed
/// as shortest decimal capped at 6 fractional digits. Identical dataset
/// values produce identical bytes. Throws on invariant violations
/// (keypoint length != 51, dangling image_id, iscrowd != 0).
std::string write_coco(const CocoDataset& dataset);

/// Tolerant reader for real COCO files: unknown fields ignored, polygon
/// segmentation skipped unless `convert_polygons` (then rendered to RLE).
CocoDataset read_coco(const std::string& json_text, bool convert_polygons = false);
CocoDataset read_coco_file(const std::string& path, bool convert_polygons = false);

}  // namespace humansynth::coco
