#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "humansynth/coco.hpp"

namespace humansynth::stats {

/// Torso-normalized keypoints: hip midpoint at the origin, scaled by the
/// mean hip-to-shoulder distance. Entries are absent when the source
/// keypoint was unlabeled (state 0).
struct NormalizedKeypoints {
    std::array<std::optional<std::array<double, 2>>, 17> points;
};

/// Requires both hips and both shoulders labeled (state 1 or 2).
/// Degenerate scale (0) yields nullopt; callers count it as a skip.
std::optional<NormalizedKeypoints> align_keypoints(const std::vector<double>& keypoints51);

struct Heatmap {
    int bins_x = 0;
    int bins_y = 0;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // extent rectangle
    std::vector<double> counts;             // bins_x * bins_y, row-major
    std::uint64_t normalization = 0;        // contributing instances

    double& at(int bx, int by) { return counts[static_cast<std::size_t>(by) * bins_x + bx]; }
    double at(int bx, int by) const {
        return counts[static_cast<std::size_t>(by) * bins_x + bx];
    }
    void accumulate(double x, double y);
    void merge(const Heatmap& other);  // exact, order-independent
};

Heatmap make_heatmap(int bins_x, int bins_y, double x0, double x1, double y0, double y1);

struct AlignmentReport {
    std::uint64_t eligible = 0;   // both hips + both shoulders labeled
    std::uint64_t skipped = 0;    // degenerate scale
};

/// Heatmap of one keypoint's normalized position over all alignable
/// person instances. Default extent [-5,5]^2, 100x100 bins.
Heatmap keypoint_heatmap(const coco::CocoDataset& dataset, const std::string& keypoint_name,
                         int bins = 100, double extent = 5.0,
                         AlignmentReport* report = nullptr);

/// Bounding boxes scaled into a frame_size x frame_size frame and
/// accumulated as filled rectangles of +1 per covered cell.
Heatmap bbox_occupancy(const coco::CocoDataset& dataset, int frame_size = 640);

struct DatasetHistograms {
    std::map<std::uint64_t, std::uint64_t> boxes_per_image;   // count -> images
    std::vector<double> relative_bbox_size;                   // per annotation
    std::map<int, std::uint64_t> keypoints_per_bbox;          // labeled count -> instances
    std::map<std::string, double> fraction_per_keypoint;      // name -> annotated fraction
    std::uint64_t person_instances = 0;
    std::uint64_t skipped_zero_area = 0;
};

/// Fig.-4-style distributions. relative size = sqrt(bbox_area / image
/// area); keypoints counted whether visible or occluded (state > 0).
DatasetHistograms dataset_histograms(const coco::CocoDataset& dataset);

}  // namespace humansynth::stats
