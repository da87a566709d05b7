#include "humansynth/lrsched.hpp"

#include <algorithm>

namespace humansynth::lrsched {

ScheduleState ScheduleState::initial(const ScheduleConfig& cfg) {
    ScheduleState s;
    s.current_lr = cfg.initial_lr;
    s.patience_budget = cfg.initial_patience;
    s.patience_remaining = cfg.initial_patience;
    s.current_epsilon = cfg.initial_epsilon;
    return s;
}

double lr_at_iteration(const ScheduleConfig& cfg, const ScheduleState& state,
                       std::uint64_t iter) {
    if (iter < cfg.warmup_iters)
        return cfg.initial_lr * static_cast<double>(iter + 1) /
               static_cast<double>(cfg.warmup_iters);
    return state.current_lr;
}

Transition on_evaluation(const ScheduleConfig& cfg, ScheduleState& state, double metric) {
    ++state.eval_index;

    // The very first metric seeds the best without counting as an
    // improvement, so a flat trace reduces exactly at the patience mark.
    bool improved = state.has_best && metric >= state.best_metric + state.current_epsilon;
    if (!state.has_best || metric > state.best_metric) {
        state.best_metric = metric;
        state.best_checkpoint_index = state.eval_index;
        state.has_best = true;
    }

    if (improved) {
        state.patience_remaining = state.patience_budget;
        return {Action::Continue, -1};
    }

    if (--state.patience_remaining > 0) return {Action::Continue, -1};

    if (state.reductions_done >= cfg.max_reductions) {
        state.finished = true;
        return {Action::Finished, state.best_checkpoint_index};
    }

    // plateau: reduce, halve epsilon and the next patience budget,
    // revert to the best checkpoint
    state.current_lr /= cfg.reduction_factor;
    ++state.reductions_done;
    if (state.reductions_done < cfg.max_reductions) {
        state.patience_budget = state.patience_budget / 2;
        state.current_epsilon /= 2.0;
    }
    state.patience_remaining = state.patience_budget;
    return {Action::ReduceAndRevert, state.best_checkpoint_index};
}

std::vector<TraceEntry> simulate_trace(const ScheduleConfig& cfg,
                                       const std::vector<double>& metrics) {
    std::vector<TraceEntry> log;
    ScheduleState state = ScheduleState::initial(cfg);
    for (std::uint64_t it = 0; it < cfg.warmup_iters; it += 100) {
        TraceEntry e;
        e.eval_index = -1;
        e.iter = it;
        e.lr = lr_at_iteration(cfg, state, it);
        e.action = "warmup";
        log.push_back(e);
    }
    for (double m : metrics) {
        if (state.finished) break;
        Transition t = on_evaluation(cfg, state, m);
        TraceEntry e;
        e.eval_index = state.eval_index;
        e.iter = cfg.warmup_iters;
        e.lr = state.current_lr;
        e.action = t.action == Action::Continue
                       ? "continue"
                       : (t.action == Action::ReduceAndRevert ? "reduce" : "finished");
        e.best_metric = state.best_metric;
        e.patience_remaining = state.patience_remaining;
        e.checkpoint = t.revert_checkpoint >= 0 ? t.revert_checkpoint
                                                : state.best_checkpoint_index;
        log.push_back(e);
    }
    return log;
}

}  // namespace humansynth::lrsched
