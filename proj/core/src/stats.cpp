#include "humansynth/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace humansynth::stats {

namespace {

// canonical keypoint indices in the 17x3 flat array
constexpr int kLeftShoulder = 5;
constexpr int kRightShoulder = 6;
constexpr int kLeftHip = 11;
constexpr int kRightHip = 12;

bool labeled(const std::vector<double>& kp, int i) { return kp[i * 3 + 2] > 0; }

bool alignment_eligible(const std::vector<double>& kp) {
    return kp.size() == 51 && labeled(kp, kLeftShoulder) && labeled(kp, kRightShoulder) &&
           labeled(kp, kLeftHip) && labeled(kp, kRightHip);
}

}  // namespace

std::optional<NormalizedKeypoints> align_keypoints(const std::vector<double>& kp) {
    if (!alignment_eligible(kp)) return std::nullopt;
    auto pt = [&](int i) {
        return std::array<double, 2>{kp[i * 3], kp[i * 3 + 1]};
    };
    auto dist = [](std::array<double, 2> a, std::array<double, 2> b) {
        return std::hypot(a[0] - b[0], a[1] - b[1]);
    };
    auto lh = pt(kLeftHip), rh = pt(kRightHip);
    auto ls = pt(kLeftShoulder), rs = pt(kRightShoulder);
    double mx = (lh[0] + rh[0]) / 2.0;
    double my = (lh[1] + rh[1]) / 2.0;
    double s = (dist(lh, ls) + dist(rh, rs)) / 2.0;
    if (s <= 0.0) return std::nullopt;

    NormalizedKeypoints out;
    for (int i = 0; i < 17; ++i) {
        if (!labeled(kp, i)) continue;
        out.points[i] = {(kp[i * 3] - mx) / s, (kp[i * 3 + 1] - my) / s};
    }
    return out;
}

Heatmap make_heatmap(int bins_x, int bins_y, double x0, double x1, double y0, double y1) {
    Heatmap h;
    h.bins_x = bins_x;
    h.bins_y = bins_y;
    h.x0 = x0;
    h.x1 = x1;
    h.y0 = y0;
    h.y1 = y1;
    h.counts.assign(static_cast<std::size_t>(bins_x) * bins_y, 0.0);
    return h;
}

void Heatmap::accumulate(double x, double y) {
    if (x < x0 || x >= x1 || y < y0 || y >= y1) return;
    int bx = static_cast<int>((x - x0) / (x1 - x0) * bins_x);
    int by = static_cast<int>((y - y0) / (y1 - y0) * bins_y);
    bx = std::clamp(bx, 0, bins_x - 1);
    by = std::clamp(by, 0, bins_y - 1);
    at(bx, by) += 1.0;
}

void Heatmap::merge(const Heatmap& other) {
    if (bins_x != other.bins_x || bins_y != other.bins_y)
        throw std::invalid_argument("Heatmap::merge: bin mismatch");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    normalization += other.normalization;
}

Heatmap keypoint_heatmap(const coco::CocoDataset& ds, const std::string& keypoint_name,
                         int bins, double extent, AlignmentReport* report) {
    const auto names = coco::default_categories()[0].keypoints;
    auto it = std::find(names.begin(), names.end(), keypoint_name);
    if (it == names.end())
        throw std::invalid_argument("keypoint_heatmap: unknown keypoint " + keypoint_name);
    int index = static_cast<int>(it - names.begin());

    Heatmap h = make_heatmap(bins, bins, -extent, extent, -extent, extent);
    for (const coco::CocoAnnotation& a : ds.annotations) {
        if (a.category_id != 1 || a.keypoints.empty()) continue;
        if (!alignment_eligible(a.keypoints)) continue;
        if (report) ++report->eligible;
        auto normalized = align_keypoints(a.keypoints);
        if (!normalized) {
            if (report) ++report->skipped;
            continue;
        }
        ++h.normalization;
        if (normalized->points[index])
            h.accumulate((*normalized->points[index])[0], (*normalized->points[index])[1]);
    }
    return h;
}

Heatmap bbox_occupancy(const coco::CocoDataset& ds, int frame_size) {
    Heatmap h = make_heatmap(frame_size, frame_size, 0, frame_size, 0, frame_size);
    std::unordered_map<std::int64_t, std::pair<int, int>> dims;
    for (const coco::CocoImage& im : ds.images) dims[im.id] = {im.width, im.height};

    for (const coco::CocoAnnotation& a : ds.annotations) {
        if (a.category_id != 1) continue;
        auto [iw, ih] = dims[a.image_id];
        if (iw <= 0 || ih <= 0 || a.bbox.w <= 0 || a.bbox.h <= 0) continue;
        double sx = static_cast<double>(frame_size) / iw;
        double sy = static_cast<double>(frame_size) / ih;
        double x0 = a.bbox.x * sx, x1 = (a.bbox.x + a.bbox.w) * sx;
        double y0 = a.bbox.y * sy, y1 = (a.bbox.y + a.bbox.h) * sy;
        int cx0 = std::clamp(static_cast<int>(std::floor(x0)), 0, frame_size - 1);
        int cx1 = std::clamp(static_cast<int>(std::ceil(x1)) - 1, 0, frame_size - 1);
        int cy0 = std::clamp(static_cast<int>(std::floor(y0)), 0, frame_size - 1);
        int cy1 = std::clamp(static_cast<int>(std::ceil(y1)) - 1, 0, frame_size - 1);
        for (int y = cy0; y <= cy1; ++y)
            for (int x = cx0; x <= cx1; ++x) h.at(x, y) += 1.0;
        ++h.normalization;
    }
    return h;
}

DatasetHistograms dataset_histograms(const coco::CocoDataset& ds) {
    DatasetHistograms out;
    std::unordered_map<std::int64_t, std::pair<int, int>> dims;
    std::unordered_map<std::int64_t, std::uint64_t> per_image;
    for (const coco::CocoImage& im : ds.images) {
        dims[im.id] = {im.width, im.height};
        per_image[im.id] = 0;
    }

    const auto names = coco::default_categories()[0].keypoints;
    std::map<std::string, std::uint64_t> annotated_count;
    for (const auto& n : names) annotated_count[n] = 0;

    for (const coco::CocoAnnotation& a : ds.annotations) {
        if (a.category_id != 1) continue;
        ++out.person_instances;
        ++per_image[a.image_id];

        auto [iw, ih] = dims[a.image_id];
        double bbox_area = a.bbox.w * a.bbox.h;
        if (bbox_area <= 0) {
            ++out.skipped_zero_area;
        } else if (iw > 0 && ih > 0) {
            out.relative_bbox_size.push_back(
                std::sqrt(bbox_area / (static_cast<double>(iw) * ih)));
        }

        if (!a.keypoints.empty()) {
            int labeled_count = 0;
            for (int i = 0; i < 17; ++i) {
                if (a.keypoints[i * 3 + 2] > 0) {
                    ++labeled_count;
                    ++annotated_count[names[i]];
                }
            }
            ++out.keypoints_per_bbox[labeled_count];
        }
    }
    for (auto& [id, n] : per_image) ++out.boxes_per_image[n];
    for (const auto& [name, count] : annotated_count)
        out.fraction_per_keypoint[name] =
            out.person_instances ? static_cast<double>(count) / out.person_instances : 0.0;
    return out;
}

}  // namespace humansynth::stats
