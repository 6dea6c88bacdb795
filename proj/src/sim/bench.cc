/* Copyright 2026 The Spotflow Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "spotflow/sim/bench.h"

#include <cmath>
#include <map>

#include "spotflow/core/errors.h"
#include "spotflow/sim/dataflow.h"

namespace spotflow::sim {

namespace {

class BenchRun : public DataflowObserver {
 public:
  explicit BenchRun(const BenchConfig& config) : cfg_(config) {}

  BenchResult Execute();

  void OnDrop(const Event& e, const std::string&, int, Timestamp) override {
    result_.events[e.header.source_id].outcome = BenchOutcome::kDropped;
  }
  void OnSink(const Event& e, const analytics::SinkVerdict& v,
              Timestamp t) override {
    BenchEvent& rec = result_.events[e.header.source_id];
    rec.probe = e.header.probe;
    for (const Hop& h : e.trail) {
      if (h.task == task_) rec.batch = h.batch_size;
    }
    switch (v.status) {
      case analytics::SinkStatus::kDropped:
        rec.outcome = BenchOutcome::kDropped;
        return;
      case analytics::SinkStatus::kDelayed:
        rec.outcome = BenchOutcome::kDelayed;
        break;
      case analytics::SinkStatus::kDelivered:
        rec.outcome = BenchOutcome::kDelivered;
        break;
    }
    rec.sink = t;
  }
  void OnBatch(TaskId id, int size, Timestamp t) override {
    if (id == task_) result_.batches.push_back({t, size});
  }
  void OnBudget(TaskId id, const budget::BudgetUpdate& u, bool,
                Timestamp t) override {
    const char* name = id == task_ ? "t" : id == up_ ? "up" : "src";
    result_.budgets.push_back({t, name, u.after});
  }

 private:
  double Factor(Timestamp t) const {
    double f = 1;
    for (const auto& [at, factor] : cfg_.slowdowns) {
      if (at <= t) f = factor;
    }
    return f;
  }

  const BenchConfig& cfg_;
  BenchResult result_;
  TaskId task_{};
  std::optional<TaskId> up_;
};

BenchResult BenchRun::Execute() {
  if (!(cfg_.rate > 0)) throw ConfigError("bench rate must be positive");
  Scheduler scheduler;
  std::vector<Device> devices = {
      {"src", Duration(0), 0}, {"node", Duration(0), 1}, {"head", Duration(0), 2}};
  Dataflow flow(scheduler, LinkModel(LinkParams{}), devices, 2, this);

  const TaskId sink = flow.AddSink(
      {"sink", 2, {cfg_.gamma, cfg_.epsilon_max, cfg_.drops_enabled}});

  TaskNodeSpec t;
  t.name = "t";
  t.device = 1;
  t.config.xi = cfg_.xi;
  t.config.mode = engine::DynamicMode{};
  t.config.downstream = {sink};
  t.config.drops_enabled = cfg_.drops_enabled;
  t.config.probe_period = cfg_.probe_k;
  t.cost = [this](int m, Timestamp at) {
    const double ms = static_cast<double>(cfg_.xi.Eval(m).count());
    return Duration(std::llround(ms * Factor(at)));
  };
  t.output_bytes = 1000;
  t.frozen_budgets = cfg_.pinned_budget.has_value();
  task_ = flow.AddTask(std::move(t));
  if (cfg_.pinned_budget) flow.task(task_).SetBudget(sink, *cfg_.pinned_budget);

  TaskId first = task_;
  if (cfg_.upstream_xi) {
    TaskNodeSpec up;
    up.name = "up";
    up.device = 1;
    up.config.xi = *cfg_.upstream_xi;
    up.config.mode = engine::DynamicMode{};
    up.config.downstream = {task_};
    up.config.drops_enabled = cfg_.drops_enabled;
    up.config.probe_period = cfg_.probe_k;
    up.output_bytes = 1000;
    up_ = flow.AddTask(std::move(up));
    first = *up_;
  }

  TaskNodeSpec src;
  src.name = "src";
  src.device = 0;
  src.config.xi = ExecTimeModel::Affine(Duration(0), Duration(1), 1);
  src.config.mode = engine::StreamingMode{};
  src.config.downstream = {first};
  src.config.drops_enabled = cfg_.drops_enabled;
  src.config.probe_period = cfg_.probe_k;
  src.output_bytes = 1000;
  const TaskId source = flow.AddTask(std::move(src));

  const double gap_ms = 1000.0 / cfg_.rate;
  for (uint64_t i = 0;; ++i) {
    const Timestamp at(Duration(std::llround(gap_ms * static_cast<double>(i))));
    if (at >= Timestamp(cfg_.duration)) break;
    BenchEvent rec;
    rec.source = at;
    result_.events.push_back(rec);
    scheduler.At(at, [&flow, source, i, at] {
      Event e;
      e.header.source_id = i;
      e.header.source_arrival = at;
      e.key = std::to_string(i);
      flow.Inject(source, std::move(e));
    });
  }
  scheduler.RunUntil(Timestamp(cfg_.duration));
  return std::move(result_);
}

}  // namespace

int BenchResult::ModalBatch(Timestamp from, Timestamp to) const {
  std::map<int, int> counts;
  for (const BenchBatch& b : batches) {
    if (b.start >= from && b.start < to) ++counts[b.size];
  }
  int best = 0, best_count = 0;
  for (const auto& [size, count] : counts) {
    if (count >= best_count) {
      best = size;
      best_count = count;
    }
  }
  return best;
}

namespace {

double RateOf(const std::vector<BenchEvent>& events, Timestamp from,
              Timestamp to, BenchOutcome outcome) {
  if (to <= from) return 0;
  uint64_t n = 0;
  for (const BenchEvent& e : events) {
    if (e.source >= from && e.source < to && e.outcome == outcome) ++n;
  }
  return static_cast<double>(n) * 1000.0 /
         static_cast<double>(Millis(to - from));
}

}  // namespace

double BenchResult::DeliveredRate(Timestamp from, Timestamp to) const {
  return RateOf(events, from, to, BenchOutcome::kDelivered);
}

double BenchResult::DroppedRate(Timestamp from, Timestamp to) const {
  return RateOf(events, from, to, BenchOutcome::kDropped);
}

BenchResult RunBench(const BenchConfig& config) {
  return BenchRun(config).Execute();
}

}  // namespace spotflow::sim
