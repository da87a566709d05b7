#include "humansynth/reports.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "humansynth/asset_io.hpp"
#include "humansynth/image_io.hpp"

namespace humansynth::reports {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void write_heatmap_pgm(const stats::Heatmap& h, const std::string& path) {
    double peak = 0.0;
    for (double c : h.counts) peak = std::max(peak, c);
    std::vector<std::uint16_t> gray(h.counts.size(), 0);
    if (peak > 0)
        for (std::size_t i = 0; i < h.counts.size(); ++i)
            gray[i] = static_cast<std::uint16_t>(std::lround(h.counts[i] / peak * 65535.0));
    io::write_pgm16(path, gray, h.bins_x, h.bins_y);
}

void write_heatmap_csv(const stats::Heatmap& h, const std::string& path) {
    std::ostringstream out;
    out << "# extent," << h.x0 << ',' << h.x1 << ',' << h.y0 << ',' << h.y1
        << ",normalization," << h.normalization << "\n";
    for (int y = 0; y < h.bins_y; ++y) {
        for (int x = 0; x < h.bins_x; ++x) {
            if (x) out << ',';
            out << h.at(x, y);
        }
        out << '\n';
    }
    io::write_text_file(path, out.str());
}

std::vector<std::uint64_t> relative_size_histogram(const std::vector<double>& values,
                                                   int bins) {
    std::vector<std::uint64_t> hist(bins, 0);
    for (double v : values) {
        int b = std::clamp(static_cast<int>(v * bins), 0, bins - 1);
        ++hist[b];
    }
    return hist;
}

constexpr int kRelSizeBins = 50;

}  // namespace

void write_stats_reports(const coco::CocoDataset& ds, const std::string& out_dir) {
    fs::create_directories(out_dir);
    stats::DatasetHistograms h = stats::dataset_histograms(ds);

    {
        std::ostringstream out;
        out << "boxes_per_image,images\n";
        for (const auto& [k, v] : h.boxes_per_image) out << k << ',' << v << '\n';
        io::write_text_file(out_dir + "/boxes_per_image.csv", out.str());
    }
    {
        auto hist = relative_size_histogram(h.relative_bbox_size, kRelSizeBins);
        std::ostringstream out;
        out << "relative_size_bin_lo,relative_size_bin_hi,annotations\n";
        for (int i = 0; i < kRelSizeBins; ++i)
            out << static_cast<double>(i) / kRelSizeBins << ','
                << static_cast<double>(i + 1) / kRelSizeBins << ',' << hist[i] << '\n';
        io::write_text_file(out_dir + "/relative_bbox_size.csv", out.str());
    }
    {
        std::ostringstream out;
        out << "annotated_keypoints,instances\n";
        for (const auto& [k, v] : h.keypoints_per_bbox) out << k << ',' << v << '\n';
        io::write_text_file(out_dir + "/keypoints_per_bbox.csv", out.str());
    }
    {
        std::ostringstream out;
        out << "keypoint,fraction_annotated\n";
        for (const auto& [k, v] : h.fraction_per_keypoint) out << k << ',' << v << '\n';
        io::write_text_file(out_dir + "/fraction_per_keypoint.csv", out.str());
    }

    stats::Heatmap occupancy = stats::bbox_occupancy(ds);
    write_heatmap_pgm(occupancy, out_dir + "/bbox_occupancy.pgm");
    write_heatmap_csv(occupancy, out_dir + "/bbox_occupancy.csv");

    stats::AlignmentReport align;
    const auto keypoint_names = coco::default_categories()[0].keypoints;
    for (const std::string& kp : keypoint_names) {
        stats::AlignmentReport local;
        stats::Heatmap hm = stats::keypoint_heatmap(ds, kp, 100, 5.0, &local);
        write_heatmap_pgm(hm, out_dir + "/heatmap_" + kp + ".pgm");
        if (kp == "nose") align = local;  // same instances for every keypoint
    }

    json summary;
    summary["images"] = ds.images.size();
    summary["annotations"] = ds.annotations.size();
    summary["person_instances"] = h.person_instances;
    summary["skipped_zero_area_bboxes"] = h.skipped_zero_area;
    summary["alignment_eligible"] = align.eligible;
    summary["alignment_skipped_degenerate"] = align.skipped;
    double mean_boxes = 0;
    std::uint64_t total_images = 0;
    for (const auto& [k, v] : h.boxes_per_image) {
        mean_boxes += static_cast<double>(k) * v;
        total_images += v;
    }
    summary["mean_boxes_per_image"] = total_images ? mean_boxes / total_images : 0.0;
    io::write_text_file(out_dir + "/summary.json", summary.dump(2));
}

void write_compare_report(const coco::CocoDataset& a, const coco::CocoDataset& b,
                          const std::string& out_dir) {
    fs::create_directories(out_dir);
    stats::DatasetHistograms ha = stats::dataset_histograms(a);
    stats::DatasetHistograms hb = stats::dataset_histograms(b);

    {
        std::uint64_t max_boxes = 0;
        for (const auto& [k, _] : ha.boxes_per_image) max_boxes = std::max(max_boxes, k);
        for (const auto& [k, _] : hb.boxes_per_image) max_boxes = std::max(max_boxes, k);
        std::ostringstream out;
        out << "boxes_per_image,images_a,images_b\n";
        for (std::uint64_t k = 0; k <= max_boxes; ++k) {
            auto ia = ha.boxes_per_image.find(k);
            auto ib = hb.boxes_per_image.find(k);
            out << k << ',' << (ia != ha.boxes_per_image.end() ? ia->second : 0) << ','
                << (ib != hb.boxes_per_image.end() ? ib->second : 0) << '\n';
        }
        io::write_text_file(out_dir + "/boxes_per_image.csv", out.str());
    }
    {
        auto hista = relative_size_histogram(ha.relative_bbox_size, kRelSizeBins);
        auto histb = relative_size_histogram(hb.relative_bbox_size, kRelSizeBins);
        std::ostringstream out;
        out << "relative_size_bin_lo,annotations_a,annotations_b\n";
        for (int i = 0; i < kRelSizeBins; ++i)
            out << static_cast<double>(i) / kRelSizeBins << ',' << hista[i] << ','
                << histb[i] << '\n';
        io::write_text_file(out_dir + "/relative_bbox_size.csv", out.str());
    }
    {
        std::ostringstream out;
        out << "keypoint,fraction_a,fraction_b,delta\n";
        for (const auto& [k, va] : ha.fraction_per_keypoint) {
            double vb = hb.fraction_per_keypoint.count(k) ? hb.fraction_per_keypoint.at(k) : 0;
            out << k << ',' << va << ',' << vb << ',' << (va - vb) << '\n';
        }
        io::write_text_file(out_dir + "/fraction_per_keypoint.csv", out.str());
    }

    auto mean = [](const std::map<std::uint64_t, std::uint64_t>& m) {
        double sum = 0;
        std::uint64_t n = 0;
        for (const auto& [k, v] : m) {
            sum += static_cast<double>(k) * v;
            n += v;
        }
        return n ? sum / n : 0.0;
    };
    auto mean_vec = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        double s = 0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };

    json deltas;
    deltas["mean_boxes_per_image_a"] = mean(ha.boxes_per_image);
    deltas["mean_boxes_per_image_b"] = mean(hb.boxes_per_image);
    deltas["mean_boxes_per_image_delta"] =
        mean(ha.boxes_per_image) - mean(hb.boxes_per_image);
    deltas["mean_relative_size_a"] = mean_vec(ha.relative_bbox_size);
    deltas["mean_relative_size_b"] = mean_vec(hb.relative_bbox_size);
    deltas["mean_relative_size_delta"] =
        mean_vec(ha.relative_bbox_size) - mean_vec(hb.relative_bbox_size);
    deltas["person_instances_a"] = ha.person_instances;
    deltas["person_instances_b"] = hb.person_instances;
    io::write_text_file(out_dir + "/deltas.json", deltas.dump(2));
}

}  // namespace humansynth::reports
