#include <doctest.h>

#include <cmath>
#include <vector>

#include "humansynth/rng.hpp"
#include "humansynth/stats.hpp"

using namespace humansynth;

namespace {

constexpr int kNose = 0;
constexpr int kLeftShoulder = 5;
constexpr int kRightShoulder = 6;
constexpr int kLeftHip = 11;
constexpr int kRightHip = 12;

std::vector<double> torso_fixture() {
    // hips at (-1,0),(1,0), shoulders at (-1,2),(1,2), nose at (0,3)
    std::vector<double> kp(51, 0.0);
    auto set = [&](int i, double x, double y) {
        kp[i * 3] = x;
        kp[i * 3 + 1] = y;
        kp[i * 3 + 2] = 2.0;
    };
    set(kNose, 0, 3);
    set(kLeftShoulder, -1, 2);
    set(kRightShoulder, 1, 2);
    set(kLeftHip, -1, 0);
    set(kRightHip, 1, 0);
    return kp;
}

coco::CocoDataset dataset_with(const std::vector<std::vector<double>>& keypoint_sets,
                               int img_w = 640, int img_h = 640) {
    coco::CocoDataset ds;
    ds.categories = coco::default_categories();
    coco::CocoImage im;
    im.id = 1;
    im.width = img_w;
    im.height = img_h;
    im.file_name = "00000000.png";
    ds.images.push_back(im);
    std::int64_t id = 1;
    for (const auto& kp : keypoint_sets) {
        coco::CocoAnnotation a;
        a.id = id++;
        a.image_id = 1;
        a.category_id = 1;
        a.bbox = {0, 0, 10, 10};
        a.area = 100;
        a.keypoints = kp;
        for (int i = 0; i < 17; ++i) a.num_keypoints += kp[i * 3 + 2] > 0 ? 1 : 0;
        ds.annotations.push_back(a);
    }
    return ds;
}

}  // namespace

TEST_CASE("torso alignment on the worked example") {
    auto kp = torso_fixture();
    auto norm = stats::align_keypoints(kp);
    REQUIRE(norm.has_value());
    // hip-shoulder distance is 2 on both sides, hip midpoint (0,0)
    REQUIRE(norm->points[kNose].has_value());
    CHECK((*norm->points[kNose])[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((*norm->points[kNose])[1] == doctest::Approx(1.5).epsilon(1e-12));
    REQUIRE(norm->points[kLeftHip].has_value());
    CHECK((*norm->points[kLeftHip])[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK((*norm->points[kLeftHip])[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((*norm->points[kLeftShoulder])[1] == doctest::Approx(1.0).epsilon(1e-12));
    // unlabeled keypoints stay absent
    CHECK_FALSE(norm->points[1].has_value());
}

TEST_CASE("alignment requires the four torso keypoints") {
    auto kp = torso_fixture();
    kp[kLeftHip * 3 + 2] = 0.0;
    CHECK_FALSE(stats::align_keypoints(kp).has_value());
    CHECK_FALSE(stats::align_keypoints(std::vector<double>(48, 1.0)).has_value());

    // occluded (state 1) torso keypoints are still usable
    auto kp2 = torso_fixture();
    for (int i : {kLeftShoulder, kRightShoulder, kLeftHip, kRightHip})
        kp2[i * 3 + 2] = 1.0;
    CHECK(stats::align_keypoints(kp2).has_value());

    // degenerate torso (all four points coincident) is a skip
    std::vector<double> flat(51, 0.0);
    for (int i : {kLeftShoulder, kRightShoulder, kLeftHip, kRightHip}) {
        flat[i * 3] = 2.0;
        flat[i * 3 + 1] = 2.0;
        flat[i * 3 + 2] = 2.0;
    }
    CHECK_FALSE(stats::align_keypoints(flat).has_value());
}

TEST_CASE("alignment is invariant to translation and scale") {
    rng::RngStream s(31, 0, "align_invariance");
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> kp(51, 0.0);
        for (int i = 0; i < 17; ++i) {
            kp[i * 3] = s.uniform({-50, 50});
            kp[i * 3 + 1] = s.uniform({-50, 50});
            kp[i * 3 + 2] = s.bernoulli(0.8) ? 2.0 : 0.0;
        }
        for (int i : {kLeftShoulder, kRightShoulder, kLeftHip, kRightHip})
            kp[i * 3 + 2] = 2.0;
        auto base = stats::align_keypoints(kp);
        if (!base) continue;

        double tx = s.uniform({-100, 100}), ty = s.uniform({-100, 100});
        double scale = s.uniform({0.1, 10.0});
        std::vector<double> moved = kp;
        for (int i = 0; i < 17; ++i) {
            moved[i * 3] = (kp[i * 3] + tx) * scale;
            moved[i * 3 + 1] = (kp[i * 3 + 1] + ty) * scale;
        }
        auto transformed = stats::align_keypoints(moved);
        REQUIRE(transformed.has_value());
        for (int i = 0; i < 17; ++i) {
            REQUIRE(base->points[i].has_value() == transformed->points[i].has_value());
            if (!base->points[i]) continue;
            CHECK((*transformed->points[i])[0] ==
                  doctest::Approx((*base->points[i])[0]).epsilon(1e-9));
            CHECK((*transformed->points[i])[1] ==
                  doctest::Approx((*base->points[i])[1]).epsilon(1e-9));
        }
    }
}

TEST_CASE("alignment rotates with the body") {
    auto kp = torso_fixture();
    double c = std::cos(0.7), s = std::sin(0.7);
    std::vector<double> rotated = kp;
    for (int i = 0; i < 17; ++i) {
        double x = kp[i * 3], y = kp[i * 3 + 1];
        rotated[i * 3] = c * x - s * y;
        rotated[i * 3 + 1] = s * x + c * y;
    }
    auto a = stats::align_keypoints(kp);
    auto b = stats::align_keypoints(rotated);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    // normalized coordinates rotate by the same angle
    for (int i : {kNose, kLeftShoulder, kLeftHip}) {
        double x = (*a->points[i])[0], y = (*a->points[i])[1];
        CHECK((*b->points[i])[0] == doctest::Approx(c * x - s * y).epsilon(1e-9));
        CHECK((*b->points[i])[1] == doctest::Approx(s * x + c * y).epsilon(1e-9));
    }
}

TEST_CASE("heatmap bins a single point where expected") {
    auto h = stats::make_heatmap(100, 100, -5, 5, -5, 5);
    h.accumulate(0.0, 1.5);
    // bin width 0.1: x=0 -> bin 50, y=1.5 -> bin 65
    CHECK(h.at(50, 65) == 1.0);
    double total = 0;
    for (double c : h.counts) total += c;
    CHECK(total == 1.0);

    // out-of-extent points are dropped
    h.accumulate(7.0, 0.0);
    total = 0;
    for (double c : h.counts) total += c;
    CHECK(total == 1.0);
}

TEST_CASE("keypoint heatmap over a dataset, with doubling") {
    auto ds = dataset_with({torso_fixture()});
    stats::AlignmentReport report;
    auto h = stats::keypoint_heatmap(ds, "nose", 100, 5.0, &report);
    CHECK(report.eligible == 1);
    CHECK(report.skipped == 0);
    CHECK(h.normalization == 1);
    CHECK(h.at(50, 65) == 1.0);

    // duplicating every instance at a translated position doubles each bin
    auto shifted = torso_fixture();
    for (int i = 0; i < 17; ++i) {
        shifted[i * 3] += 40.0;
        shifted[i * 3 + 1] += 17.0;
    }
    auto ds2 = dataset_with({torso_fixture(), shifted});
    auto h2 = stats::keypoint_heatmap(ds2, "nose", 100, 5.0);
    CHECK(h2.normalization == 2);
    for (int i = 0; i < 100 * 100; ++i) CHECK(h2.counts[i] == 2.0 * h.counts[i]);

    CHECK_THROWS_AS(stats::keypoint_heatmap(ds, "chin"), std::invalid_argument);
}

TEST_CASE("mirrored bodies land in mirrored wrist bins") {
    auto kp = torso_fixture();
    kp[9 * 3] = -2.1;  // left wrist out to the body's left
    kp[9 * 3 + 1] = 1.0;
    kp[9 * 3 + 2] = 2.0;
    auto mirrored = torso_fixture();
    mirrored[10 * 3] = 2.1;  // right wrist mirrored in x
    mirrored[10 * 3 + 1] = 1.0;
    mirrored[10 * 3 + 2] = 2.0;
    auto ds = dataset_with({kp, mirrored});
    auto left = stats::keypoint_heatmap(ds, "left_wrist", 100, 5.0);
    auto right = stats::keypoint_heatmap(ds, "right_wrist", 100, 5.0);
    for (int by = 0; by < 100; ++by)
        for (int bx = 0; bx < 100; ++bx)
            CHECK(left.at(bx, by) == right.at(99 - bx, by));
    double total = 0;
    for (double c : left.counts) total += c;
    CHECK(total == 1.0);
}

TEST_CASE("heatmap merge is exact and order independent") {
    rng::RngStream s(32, 0, "merge");
    auto a = stats::make_heatmap(50, 50, -5, 5, -5, 5);
    auto b = stats::make_heatmap(50, 50, -5, 5, -5, 5);
    auto all = stats::make_heatmap(50, 50, -5, 5, -5, 5);
    for (int i = 0; i < 5000; ++i) {
        double x = s.uniform({-5, 5}), y = s.uniform({-5, 5});
        (i % 2 ? a : b).accumulate(x, y);
        all.accumulate(x, y);
    }
    a.merge(b);
    for (int i = 0; i < 50 * 50; ++i) CHECK(a.counts[i] == all.counts[i]);

    auto wrong = stats::make_heatmap(40, 40, -5, 5, -5, 5);
    CHECK_THROWS_AS(a.merge(wrong), std::invalid_argument);
}

TEST_CASE("bbox occupancy grid") {
    // one full-frame box: every cell gets +1
    auto full = dataset_with({torso_fixture()});
    full.annotations[0].bbox = {0, 0, 640, 640};
    auto h = stats::bbox_occupancy(full, 640);
    for (double c : h.counts) CHECK(c == 1.0);

    // left-half box on a 640x640 image
    auto half = dataset_with({torso_fixture()});
    half.annotations[0].bbox = {0, 0, 320, 640};
    auto h2 = stats::bbox_occupancy(half, 640);
    for (int y = 0; y < 640; ++y)
        for (int x = 0; x < 640; ++x)
            CHECK(h2.at(x, y) == (x < 320 ? 1.0 : 0.0));

    // boxes rescale with the source image size
    auto small = dataset_with({torso_fixture()}, 64, 64);
    small.annotations[0].bbox = {0, 0, 32, 64};
    auto h3 = stats::bbox_occupancy(small, 640);
    for (int y = 0; y < 640; ++y)
        for (int x = 0; x < 640; ++x)
            CHECK(h3.at(x, y) == (x < 320 ? 1.0 : 0.0));
}

TEST_CASE("dataset histograms") {
    auto ds = dataset_with({torso_fixture(), torso_fixture()});
    // a 64x64 box in a 640x640 image: relative size exactly 0.1
    ds.annotations[0].bbox = {100, 100, 64, 64};
    ds.annotations[1].bbox = {0, 0, 0, 0};  // degenerate, skipped for size

    // second image with no annotations
    coco::CocoImage empty;
    empty.id = 2;
    empty.width = 640;
    empty.height = 640;
    empty.file_name = "00000001.png";
    ds.images.push_back(empty);

    auto h = stats::dataset_histograms(ds);
    CHECK(h.person_instances == 2);
    CHECK(h.skipped_zero_area == 1);
    REQUIRE(h.relative_bbox_size.size() == 1);
    CHECK(h.relative_bbox_size[0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(h.boxes_per_image[2] == 1);
    CHECK(h.boxes_per_image[0] == 1);
    CHECK(h.keypoints_per_bbox[5] == 2);  // the fixture labels 5 keypoints
    CHECK(h.fraction_per_keypoint["nose"] == doctest::Approx(1.0));
    CHECK(h.fraction_per_keypoint["left_wrist"] == doctest::Approx(0.0));
    std::uint64_t image_total = 0;
    for (const auto& [k, v] : h.boxes_per_image) image_total += v;
    CHECK(image_total == ds.images.size());
}
