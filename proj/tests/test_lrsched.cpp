#include <doctest.h>

#include <vector>

#include "humansynth/lrsched.hpp"

using namespace humansynth::lrsched;

namespace {

ScheduleConfig default_cfg() { return ScheduleConfig{}; }

}  // namespace

TEST_CASE("linear warmup ramp") {
    ScheduleConfig cfg = default_cfg();
    ScheduleState st = ScheduleState::initial(cfg);
    CHECK(lr_at_iteration(cfg, st, 0) == doctest::Approx(0.02 / 1000.0));
    CHECK(lr_at_iteration(cfg, st, 499) == doctest::Approx(0.01));
    CHECK(lr_at_iteration(cfg, st, 999) == doctest::Approx(0.02));
    CHECK(lr_at_iteration(cfg, st, 1000) == doctest::Approx(0.02));
    CHECK(lr_at_iteration(cfg, st, 500000) == doctest::Approx(0.02));
}

TEST_CASE("flat metric trace reduces on the exact schedule") {
    ScheduleConfig cfg = default_cfg();
    ScheduleState st = ScheduleState::initial(cfg);

    // patience 38 -> 19 -> 9 -> 9, lr 0.02 -> 2e-3 -> 2e-4 -> 2e-5
    std::vector<int> reduce_evals;
    int finished_eval = -1;
    for (int e = 1; e <= 200 && finished_eval < 0; ++e) {
        Transition t = on_evaluation(cfg, st, 50.0);
        if (t.action == Action::ReduceAndRevert) {
            reduce_evals.push_back(e);
            CHECK(t.revert_checkpoint == 1);  // best stays at the first eval
        } else if (t.action == Action::Finished) {
            finished_eval = e;
        }
    }
    REQUIRE(reduce_evals.size() == 3);
    CHECK(reduce_evals[0] == 38);
    CHECK(reduce_evals[1] == 57);
    CHECK(reduce_evals[2] == 66);
    CHECK(finished_eval == 75);
    CHECK(st.current_lr == doctest::Approx(2e-5));
    CHECK(st.finished);
}

TEST_CASE("lr values after each reduction") {
    ScheduleConfig cfg = default_cfg();
    ScheduleState st = ScheduleState::initial(cfg);
    std::vector<double> lrs;
    for (int e = 1; e <= 66; ++e) {
        Transition t = on_evaluation(cfg, st, 10.0);
        if (t.action == Action::ReduceAndRevert) lrs.push_back(st.current_lr);
    }
    REQUIRE(lrs.size() == 3);
    CHECK(lrs[0] == doctest::Approx(0.002));
    CHECK(lrs[1] == doctest::Approx(0.0002));
    CHECK(lrs[2] == doctest::Approx(0.00002));
}

TEST_CASE("steady improvement never reduces") {
    ScheduleConfig cfg = default_cfg();
    ScheduleState st = ScheduleState::initial(cfg);
    double metric = 10.0;
    for (int e = 1; e <= 500; ++e) {
        Transition t = on_evaluation(cfg, st, metric);
        CHECK(t.action == Action::Continue);
        metric += 5.0;  // exactly the epsilon threshold counts as improvement
    }
    CHECK(st.reductions_done == 0);
    CHECK(st.best_checkpoint_index == 500);
    CHECK(st.best_metric == doctest::Approx(10.0 + 499 * 5.0));
}

TEST_CASE("gains below epsilon are stagnation") {
    ScheduleConfig cfg = default_cfg();
    ScheduleState st = ScheduleState::initial(cfg);
    on_evaluation(cfg, st, 100.0);
    // +4.999 updates the best checkpoint but does not reset patience
    int reduce_at = -1;
    for (int e = 2; e <= 60; ++e) {
        Transition t = on_evaluation(cfg, st, 100.0 + 4.999);
        if (t.action == Action::ReduceAndRevert) {
            reduce_at = e;
            CHECK(t.revert_checkpoint == 2);  // first eval that reached 104.999
            break;
        }
    }
    CHECK(reduce_at == 38);
    CHECK(st.best_metric == doctest::Approx(104.999));
}

TEST_CASE("epsilon halves with each reduction") {
    ScheduleConfig cfg = default_cfg();
    ScheduleState st = ScheduleState::initial(cfg);
    for (int e = 1; e <= 38; ++e) on_evaluation(cfg, st, 1.0);
    CHECK(st.current_epsilon == doctest::Approx(2.5));
    for (int e = 0; e < 19; ++e) on_evaluation(cfg, st, 1.0);
    CHECK(st.current_epsilon == doctest::Approx(1.25));
}

TEST_CASE("best checkpoint survives a reduction and reverts to it") {
    ScheduleConfig cfg = default_cfg();
    ScheduleState st = ScheduleState::initial(cfg);
    on_evaluation(cfg, st, 10.0);
    on_evaluation(cfg, st, 40.0);  // improvement at eval 2
    Transition t{};
    for (int e = 3; e <= 80 && t.action != Action::ReduceAndRevert; ++e)
        t = on_evaluation(cfg, st, 12.0);
    REQUIRE(t.action == Action::ReduceAndRevert);
    CHECK(t.revert_checkpoint == 2);
    CHECK(st.best_metric == doctest::Approx(40.0));
}

TEST_CASE("simulate_trace replays deterministically") {
    ScheduleConfig cfg = default_cfg();
    std::vector<double> metrics(90, 7.0);
    auto a = simulate_trace(cfg, metrics);
    auto b = simulate_trace(cfg, metrics);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].eval_index == b[i].eval_index);
        CHECK(a[i].lr == b[i].lr);
        CHECK(a[i].action == b[i].action);
        CHECK(a[i].best_metric == b[i].best_metric);
        CHECK(a[i].patience_remaining == b[i].patience_remaining);
        CHECK(a[i].checkpoint == b[i].checkpoint);
    }

    // 10 warmup rows (every 100 of 1000 iters), then one row per eval up
    // to the finish at eval 75
    int warmup_rows = 0, eval_rows = 0;
    for (const auto& e : a) (e.eval_index < 0 ? warmup_rows : eval_rows)++;
    CHECK(warmup_rows == 10);
    CHECK(eval_rows == 75);
    CHECK(a.front().action == "warmup");
    CHECK(a.front().lr == doctest::Approx(0.02 / 1000.0));
    CHECK(a.back().action == "finished");

    int reduces = 0;
    for (const auto& e : a) reduces += e.action == "reduce" ? 1 : 0;
    CHECK(reduces == 3);
}

TEST_CASE("simulate_trace with no metrics is warmup only") {
    auto log = simulate_trace(default_cfg(), {});
    CHECK(log.size() == 10);
    for (const auto& e : log) CHECK(e.action == "warmup");
}

TEST_CASE("post-warmup lr never increases") {
    ScheduleConfig cfg = default_cfg();
    ScheduleState st = ScheduleState::initial(cfg);
    double prev_lr = st.current_lr;
    double prev_best = -1e300;
    // pseudo-random but fixed metric pattern
    for (int e = 1; e <= 120; ++e) {
        double metric = 50.0 + 20.0 * ((e * 2654435761u) % 97) / 97.0;
        if (st.finished) break;
        on_evaluation(cfg, st, metric);
        CHECK(st.current_lr <= prev_lr);
        CHECK(st.best_metric >= prev_best);
        prev_lr = st.current_lr;
        prev_best = st.best_metric;
    }
}
