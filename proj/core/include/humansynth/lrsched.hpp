#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace humansynth::lrsched {

struct ScheduleConfig {
    double initial_lr = 0.02;
    std::uint64_t warmup_iters = 1000;   // linear ramp at the start
    int initial_patience = 38;           // evaluation events
    double initial_epsilon = 5.0;        // metric points
    double reduction_factor = 10.0;
    int max_reductions = 3;
    std::uint64_t max_iters = 1'000'000;
};

struct ScheduleState {
    double current_lr = 0.0;
    int reductions_done = 0;
    int patience_remaining = 0;
    int patience_budget = 0;
    double current_epsilon = 0.0;
    double best_metric = 0.0;
    bool has_best = false;
    int best_checkpoint_index = -1;  // eval index of the best metric
    int eval_index = 0;
    bool finished = false;

    static ScheduleState initial(const ScheduleConfig& cfg);
};

enum class Action { Continue, ReduceAndRevert, Finished };

struct Transition {
    Action action = Action::Continue;
    int revert_checkpoint = -1;  // set for ReduceAndRevert
};

/// Learning rate at a raw training iteration: linear warmup from
/// initial_lr/warmup_iters up to initial_lr, then the current plateau lr.
double lr_at_iteration(const ScheduleConfig& cfg, const ScheduleState& state,
                       std::uint64_t iter);

/// One validation event. Improvement means metric >= best + epsilon
/// (strict threshold in absolute metric points). When patience runs out
/// the lr divides by the reduction factor, epsilon and the next patience
/// budget halve (integer floor), and training reverts to the best
/// checkpoint. After the final reduction's patience expires the
/// schedule reports Finished.
Transition on_evaluation(const ScheduleConfig& cfg, ScheduleState& state, double metric);

struct TraceEntry {
    int eval_index = 0;      // -1 for warmup rows
    std::uint64_t iter = 0;  // warmup rows only
    double lr = 0.0;
    std::string action;      // "warmup", "continue", "reduce", "finished"
    double best_metric = 0.0;
    int patience_remaining = 0;
    int checkpoint = -1;
};

/// Deterministic replay of a whole metric trace, including warmup rows
/// (sampled every 100 iterations).
std::vector<TraceEntry> simulate_trace(const ScheduleConfig& cfg,
                                       const std::vector<double>& metrics);

}  // namespace humansynth::lrsched
