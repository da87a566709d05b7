#pragma once

#include <string>

#include "humansynth/stats.hpp"

namespace humansynth::reports {

/// All dataset-analysis artifacts: four histogram CSVs, the bbox
/// occupancy grid (16-bit PGM + CSV), 17 keypoint heatmap PGMs, and a
/// JSON summary with scalar statistics and the skip report.
void write_stats_reports(const coco::CocoDataset& dataset, const std::string& out_dir);

/// Side-by-side report for two datasets: paired histograms on shared
/// axes and scalar deltas (deltas.json).
void write_compare_report(const coco::CocoDataset& a, const coco::CocoDataset& b,
                          const std::string& out_dir);

}  // namespace humansynth::reports
