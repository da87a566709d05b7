#include <benchmark/benchmark.h>

#include "humansynth/annotate.hpp"
#include "humansynth/generate.hpp"
#include "humansynth/raster.hpp"
#include "humansynth/stats.hpp"

using namespace humansynth;

namespace {

config::ScenarioConfig bench_config(int side) {
    config::ScenarioConfig cfg;
    cfg.seed = 7;
    cfg.frame_count = 1;
    cfg.image_width = side;
    cfg.image_height = side;
    return cfg;
}

void BM_BuildFrame(benchmark::State& state) {
    config::ScenarioConfig cfg = bench_config(640);
    auto ctx = scene::SceneContext::from_config(cfg);
    std::uint64_t frame = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(scene::build_frame(cfg, ctx, cfg.seed, frame++));
}
BENCHMARK(BM_BuildFrame);

void BM_RasterizeLabels(benchmark::State& state) {
    config::ScenarioConfig cfg = bench_config(static_cast<int>(state.range(0)));
    auto ctx = scene::SceneContext::from_config(cfg);
    auto spec = scene::build_frame(cfg, ctx, cfg.seed, 0);
    for (auto _ : state) benchmark::DoNotOptimize(label::rasterize(spec, ctx, false));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RasterizeLabels)->Arg(160)->Arg(320)->Arg(640);

void BM_RasterizeShaded(benchmark::State& state) {
    config::ScenarioConfig cfg = bench_config(640);
    auto ctx = scene::SceneContext::from_config(cfg);
    auto spec = scene::build_frame(cfg, ctx, cfg.seed, 0);
    for (auto _ : state) benchmark::DoNotOptimize(label::rasterize(spec, ctx, true));
}
BENCHMARK(BM_RasterizeShaded);

void BM_AnnotateFrame(benchmark::State& state) {
    config::ScenarioConfig cfg = bench_config(640);
    auto ctx = scene::SceneContext::from_config(cfg);
    auto spec = scene::build_frame(cfg, ctx, cfg.seed, 0);
    auto fb = label::rasterize(spec, ctx, false);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            label::annotate_frame(spec, ctx, fb, config::LabelingScheme::VisibleOnly, true));
}
BENCHMARK(BM_AnnotateFrame);

void BM_FullFrame(benchmark::State& state) {
    config::ScenarioConfig cfg = bench_config(640);
    auto ctx = scene::SceneContext::from_config(cfg);
    std::uint64_t frame = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(gen::generate_frame(cfg, ctx, frame++, false));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FullFrame);

void BM_PoissonDisk(benchmark::State& state) {
    rng::Box3 volume{{-6, 0, -6}, {6, 4, 6}};
    std::uint64_t frame = 0;
    for (auto _ : state) {
        rng::RngStream s(3, frame++, "bench_poisson");
        benchmark::DoNotOptimize(rng::poisson_disk(volume, 0.8, 200, s));
    }
}
BENCHMARK(BM_PoissonDisk);

void BM_ForwardKinematics(benchmark::State& state) {
    auto assets = human::builtin_assets();
    auto clips = human::builtin_pose_library();
    geom::Transform root;
    root.translation = {0.5, 0.9, 1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            human::forward_kinematics(assets[1], clips[1].frames[4], root));
}
BENCHMARK(BM_ForwardKinematics);

void BM_RleRoundTrip(benchmark::State& state) {
    std::vector<std::uint8_t> bitmap(640 * 640, 0);
    for (int y = 100; y < 500; ++y)
        for (int x = 200; x < 400; ++x) bitmap[y * 640 + x] = (x + y) % 3 != 0;
    for (auto _ : state) {
        auto rle = coco::rle_encode(bitmap, 640, 640);
        benchmark::DoNotOptimize(coco::rle_decode(rle));
    }
}
BENCHMARK(BM_RleRoundTrip);

void BM_WriteCoco(benchmark::State& state) {
    config::ScenarioConfig cfg = bench_config(320);
    cfg.frame_count = 20;
    coco::CocoDataset ds = gen::generate_in_memory(cfg, 1);
    for (auto _ : state) benchmark::DoNotOptimize(coco::write_coco(ds));
}
BENCHMARK(BM_WriteCoco);

void BM_DatasetHistograms(benchmark::State& state) {
    config::ScenarioConfig cfg = bench_config(320);
    cfg.frame_count = 50;
    coco::CocoDataset ds = gen::generate_in_memory(cfg, 1);
    for (auto _ : state) benchmark::DoNotOptimize(stats::dataset_histograms(ds));
}
BENCHMARK(BM_DatasetHistograms);

}  // namespace

BENCHMARK_MAIN();
