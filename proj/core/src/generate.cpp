#include "humansynth/generate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "humansynth/asset_io.hpp"
#include "humansynth/image_io.hpp"
#include "humansynth/raster.hpp"

namespace humansynth::gen {

namespace fs = std::filesystem;

namespace {

std::string frame_name(std::uint64_t frame, const char* ext) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%08llu.%s", static_cast<unsigned long long>(frame), ext);
    return buf;
}

coco::CocoAnnotation to_coco(const label::AnnotationRecord& rec, std::int64_t image_id) {
    coco::CocoAnnotation a;
    a.image_id = image_id;
    a.category_id = rec.category == "person" ? 1 : 2;
    a.bbox = rec.bbox;
    a.area = rec.area;
    if (!rec.keypoints.empty()) {
        for (const label::KeypointLabel& k : rec.keypoints) {
            a.keypoints.push_back(k.u);
            a.keypoints.push_back(k.v);
            a.keypoints.push_back(k.state);
        }
        a.num_keypoints = rec.num_keypoints;
    }
    a.segmentation = rec.mask;
    for (const auto& c : rec.bbox3d) a.bbox3d.push_back({c[0], c[1], c[2]});
    return a;
}

}  // namespace

FrameResult generate_frame(const config::ScenarioConfig& cfg, const scene::SceneContext& ctx,
                           std::uint64_t frame_index, bool shade) {
    scene::SceneSpec spec = scene::build_frame(cfg, ctx, cfg.seed, frame_index);
    label::FrameBuffers fb = label::rasterize(spec, ctx, shade);
    FrameResult result;
    result.image.id = static_cast<std::int64_t>(frame_index) + 1;
    result.image.width = cfg.image_width;
    result.image.height = cfg.image_height;
    result.image.file_name = frame_name(frame_index, "png");
    result.records = label::annotate_frame(spec, ctx, fb, cfg.scheme, cfg.self_occlusion);
    return result;
}

namespace {

struct RunOutput {
    std::vector<FrameResult> frames;
};

RunOutput run_frames(const config::ScenarioConfig& cfg, const scene::SceneContext& ctx,
                     int workers, const std::string& out_dir, bool emit_files) {
    const std::uint64_t n = static_cast<std::uint64_t>(cfg.frame_count);
    RunOutput out;
    out.frames.resize(n);
    workers = std::max(1, workers);

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            std::uint64_t frame = next.fetch_add(1);
            if (frame >= n || failed.load()) break;
            try {
                bool shade = cfg.emit_images;
                scene::SceneSpec spec = scene::build_frame(cfg, ctx, cfg.seed, frame);
                label::FrameBuffers fb = label::rasterize(spec, ctx, shade);
                FrameResult result;
                result.image.id = static_cast<std::int64_t>(frame) + 1;
                result.image.width = cfg.image_width;
                result.image.height = cfg.image_height;
                result.image.file_name = frame_name(frame, "png");
                result.records =
                    label::annotate_frame(spec, ctx, fb, cfg.scheme, cfg.self_occlusion);

                if (emit_files && cfg.emit_images) {
                    label::post_process(fb, spec.post);
                    std::vector<std::uint8_t> rgb8(fb.rgb.size());
                    for (std::size_t i = 0; i < fb.rgb.size(); ++i)
                        rgb8[i] = static_cast<std::uint8_t>(
                            std::lround(std::clamp(fb.rgb[i], 0.0f, 1.0f) * 255.0f));
                    io::write_png(out_dir + "/images/" + frame_name(frame, "png"), rgb8,
                                  fb.width, fb.height);
                }
                if (emit_files && cfg.emit_masks) {
                    std::vector<std::uint16_t> inst(fb.instance_id.size());
                    for (std::size_t i = 0; i < fb.instance_id.size(); ++i)
                        inst[i] = static_cast<std::uint16_t>(fb.instance_id[i]);
                    io::write_pgm16(out_dir + "/masks/" + frame_name(frame, "pgm"), inst,
                                    fb.width, fb.height);
                }
                out.frames[frame] = std::move(result);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed = true;
                error_message = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed) throw std::runtime_error("frame generation failed: " + error_message);
    return out;
}

coco::CocoDataset assemble(const RunOutput& run, Summary* summary) {
    coco::CocoDataset ds;
    ds.description = "humansynth generated dataset";
    ds.categories = coco::default_categories();
    std::int64_t next_ann_id = 1;
    for (const FrameResult& fr : run.frames) {
        ds.images.push_back(fr.image);
        for (const label::AnnotationRecord& rec : fr.records) {
            coco::CocoAnnotation a = to_coco(rec, fr.image.id);
            a.id = next_ann_id++;
            if (summary) {
                if (a.category_id == 1) {
                    ++summary->person_annotations;
                    for (std::size_t k = 2; k < a.keypoints.size(); k += 3)
                        ++summary->keypoint_state_counts[static_cast<int>(a.keypoints[k])];
                } else {
                    ++summary->occluder_annotations;
                }
            }
            ds.annotations.push_back(std::move(a));
        }
    }
    return ds;
}

}  // namespace

coco::CocoDataset generate_in_memory(const config::ScenarioConfig& cfg, int workers,
                                     Summary* summary) {
    auto violations = config::validate_config(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid config:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw std::runtime_error(msg);
    }
    scene::SceneContext ctx = scene::SceneContext::from_config(cfg);
    auto start = std::chrono::steady_clock::now();
    RunOutput run = run_frames(cfg, ctx, workers, "", false);
    coco::CocoDataset ds = assemble(run, summary);
    if (summary) {
        summary->frames = static_cast<std::uint64_t>(cfg.frame_count);
        summary->seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        summary->frames_per_second =
            summary->seconds > 0 ? summary->frames / summary->seconds : 0.0;
    }
    return ds;
}

Summary generate_dataset(const config::ScenarioConfig& cfg, const std::string& out_dir,
                         int workers) {
    auto violations = config::validate_config(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid config:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw std::runtime_error(msg);
    }
    fs::create_directories(out_dir);
    if (cfg.emit_images) fs::create_directories(out_dir + "/images");
    if (cfg.emit_masks) fs::create_directories(out_dir + "/masks");

    scene::SceneContext ctx = scene::SceneContext::from_config(cfg);
    Summary summary;
    auto start = std::chrono::steady_clock::now();
    RunOutput run = run_frames(cfg, ctx, workers, out_dir, true);
    coco::CocoDataset ds = assemble(run, &summary);
    io::write_text_file(out_dir + "/annotations.json", coco::write_coco(ds));
    summary.frames = static_cast<std::uint64_t>(cfg.frame_count);
    summary.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    summary.frames_per_second =
        summary.seconds > 0 ? summary.frames / summary.seconds : 0.0;
    return summary;
}

}  // namespace humansynth::gen
