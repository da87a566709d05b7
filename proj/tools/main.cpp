#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "humansynth/asset_io.hpp"
#include "humansynth/coco.hpp"
#include "humansynth/config.hpp"
#include "humansynth/generate.hpp"
#include "humansynth/lrsched.hpp"
#include "humansynth/reports.hpp"

namespace {

// exit codes: 0 ok, 2 invalid config, 3 I/O failure, 4 parse failure
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitParse = 4;

using namespace humansynth;

config::ScenarioConfig load_and_override(const std::string& path) {
    config::ScenarioConfig cfg = config::load_config_file(path);
    if (const char* seed = std::getenv("HUMANSYNTH_SEED"))
        cfg.seed = std::strtoull(seed, nullptr, 10);
    return cfg;
}

int cmd_generate(const std::string& config_path, std::string out_dir, int workers) {
    if (const char* env_out = std::getenv("HUMANSYNTH_OUT")) out_dir = env_out;
    config::ScenarioConfig cfg;
    try {
        cfg = load_and_override(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    auto violations = config::validate_config(cfg);
    if (!violations.empty()) {
        std::cerr << "invalid config:\n";
        for (const auto& v : violations) std::cerr << "  " << v << "\n";
        return kExitConfig;
    }
    try {
        gen::Summary s = gen::generate_dataset(cfg, out_dir, workers);
        std::cout << "frames: " << s.frames << "\n"
                  << "seconds: " << s.seconds << "\n"
                  << "frames_per_second: " << s.frames_per_second << "\n"
                  << "person_annotations: " << s.person_annotations << "\n"
                  << "occluder_annotations: " << s.occluder_annotations << "\n"
                  << "keypoints_v0: " << s.keypoint_state_counts[0] << "\n"
                  << "keypoints_v1: " << s.keypoint_state_counts[1] << "\n"
                  << "keypoints_v2: " << s.keypoint_state_counts[2] << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_stats(const std::string& dataset_path, const std::string& out_dir) {
    coco::CocoDataset ds;
    try {
        ds = coco::read_coco_file(dataset_path);
    } catch (const std::exception& e) {
        std::cerr << dataset_path << ": " << e.what() << "\n";
        return kExitParse;
    }
    try {
        reports::write_stats_reports(ds, out_dir);
        std::cout << "stats written to " << out_dir << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "report write failed: " << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::string& out_dir) {
    coco::CocoDataset a, b;
    try {
        a = coco::read_coco_file(path_a);
        b = coco::read_coco_file(path_b);
    } catch (const std::exception& e) {
        std::cerr << "parse failure: " << e.what() << "\n";
        return kExitParse;
    }
    try {
        reports::write_compare_report(a, b, out_dir);
        std::cout << "comparison written to " << out_dir << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "report write failed: " << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_lrsim(const std::string& trace_path, const std::string& out_path) {
    std::vector<double> metrics;
    try {
        std::string text = io::read_text_file(trace_path);
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' ||
                line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos)
                continue;  // header or comment
            // accept "metric" or "eval,metric" rows
            auto comma = line.rfind(',');
            std::string value = comma == std::string::npos ? line : line.substr(comma + 1);
            metrics.push_back(std::stod(value));
        }
    } catch (const std::exception& e) {
        std::cerr << trace_path << ": " << e.what() << "\n";
        return kExitParse;
    }
    try {
        lrsched::ScheduleConfig cfg;
        auto log = lrsched::simulate_trace(cfg, metrics);
        std::ostringstream out;
        out << "eval_index,iter,lr,action,best_metric,patience_remaining,checkpoint\n";
        for (const auto& e : log)
            out << e.eval_index << ',' << e.iter << ',' << e.lr << ',' << e.action << ','
                << e.best_metric << ',' << e.patience_remaining << ',' << e.checkpoint
                << '\n';
        io::write_text_file(out_path, out.str());
        std::cout << "schedule log written to " << out_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "lrsim failed: " << e.what() << "\n";
        return kExitIo;
    }
}

int cmd_validate(const std::string& config_path, bool print) {
    config::ScenarioConfig cfg;
    try {
        cfg = load_and_override(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    auto violations = config::validate_config(cfg);
    if (!violations.empty()) {
        std::cerr << "invalid config:\n";
        for (const auto& v : violations) std::cerr << "  " << v << "\n";
        return kExitConfig;
    }
    if (print) std::cout << config::config_to_json(cfg) << "\n";
    else std::cout << "config ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic synthetic human dataset generator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "dataset", dataset_path;
    std::string path_a, path_b, trace_path, out_path;
    int workers = 1;
    bool print_config = false;

    auto* generate = app.add_subcommand("generate", "generate a labeled dataset");
    generate->add_option("--config", config_path, "scenario config JSON")->required();
    generate->add_option("--workers", workers, "frame worker threads");
    generate->add_option("--out", out_dir, "output directory");

    auto* statscmd = app.add_subcommand("stats", "analyze a COCO dataset");
    statscmd->add_option("--dataset", dataset_path, "COCO annotations JSON")->required();
    statscmd->add_option("--out", out_dir, "output directory")->required();

    auto* compare = app.add_subcommand("compare", "compare two COCO datasets");
    compare->add_option("--a", path_a, "first dataset")->required();
    compare->add_option("--b", path_b, "second dataset")->required();
    compare->add_option("--out", out_dir, "output directory")->required();

    auto* lrsim = app.add_subcommand("lrsim", "simulate the plateau lr schedule");
    lrsim->add_option("--trace", trace_path, "metric trace CSV")->required();
    lrsim->add_option("--out", out_path, "transition log CSV")->required();

    auto* validate = app.add_subcommand("validate", "validate a scenario config");
    validate->add_option("--config", config_path, "scenario config JSON")->required();
    validate->add_flag("--print", print_config, "print the resolved config");

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) return cmd_generate(config_path, out_dir, workers);
    if (statscmd->parsed()) return cmd_stats(dataset_path, out_dir);
    if (compare->parsed()) return cmd_compare(path_a, path_b, out_dir);
    if (lrsim->parsed()) return cmd_lrsim(trace_path, out_path);
    if (validate->parsed()) return cmd_validate(config_path, print_config);
    return 0;
}
