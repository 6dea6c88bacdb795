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

#ifndef SPOTFLOW_ENGINE_TASK_H_
#define SPOTFLOW_ENGINE_TASK_H_

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "spotflow/budget/budget_state.h"
#include "spotflow/budget/protocol.h"
#include "spotflow/budget/signals.h"
#include "spotflow/core/event.h"
#include "spotflow/core/exec_time_model.h"
#include "spotflow/engine/batch_size_policy.h"
#include "spotflow/engine/batcher.h"
#include "spotflow/engine/drop_points.h"

namespace spotflow::engine {

struct TaskConfig {
  TaskId id{};
  ExecTimeModel xi = ExecTimeModel::Affine(Duration(0), Duration(1), 1);
  std::vector<TaskId> downstream;
  BatchingMode mode = DynamicMode{};
  bool drops_enabled = true;
  int probe_period = budget::kDefaultProbePeriod;
  size_t history_capacity = budget::TimingHistory::kDefaultCapacity;
  // Refit xi online from observed batch durations.
  bool online_xi = false;
  // Skew the task believes its clock has; zero unless configured.
  Duration assumed_skew{0};
};

// Per-task state owned by the task's execution loop.
struct TaskRuntime {
  TaskConfig config;
  budget::BudgetTable budgets;
  budget::TimingHistory history;
  std::optional<OnlineExecTimeEstimator> online;

  explicit TaskRuntime(TaskConfig cfg);

  const ExecTimeModel& xi() const {
    return online ? online->model() : config.xi;
  }
};

// An event the task decided to drop, with the reject to send upstream.
struct DropRecord {
  Event event;
  DropPoint point = DropPoint::kBeforeQueuing;
  budget::RejectSignal reject;
};

struct Emission {
  TaskId dest{};
  std::vector<Event> events;
};

struct BatchStart {
  Timestamp start{};
  int size = 0;
};

// Everything the hosting scheduler has to act on after one task step. All
// timestamps are on the task's local clock.
struct TaskEffects {
  std::vector<DropRecord> drops;
  std::vector<Emission> emissions;
  std::vector<BatchStart> batches;
  std::optional<Timestamp> completion;  // call CompleteBatch() then
  std::optional<Timestamp> wakeup;      // call Wake() then
};

struct TaskStats {
  uint64_t received = 0;
  uint64_t executed = 0;
  uint64_t batches = 0;
  uint64_t emitted = 0;
  uint64_t dropped[3] = {0, 0, 0};
  uint64_t probes = 0;
  uint64_t signals_ignored = 0;
  Duration busy{0};
  std::map<int, uint64_t> batch_sizes;
};

// Single-threaded task loop: FIFO queue, three drop points, batch formation,
// execution and key partitioning.
class Task {
 public:
  // Mutates a batch in place; must keep one output per input.
  using Logic = std::function<void(std::vector<Event>& batch)>;
  // Actual execution duration of a batch starting at a local time.
  using CostFn = std::function<Duration(int batch, Timestamp start)>;

  explicit Task(TaskConfig config, Logic logic = {}, CostFn cost = {});

  TaskEffects Receive(Event event, Timestamp now);
  // Events that arrive together are all queued before a batch is formed.
  TaskEffects ReceiveAll(std::vector<Event> events, Timestamp now);
  TaskEffects CompleteBatch(Timestamp now);
  TaskEffects Wake(Timestamp now);

  std::optional<budget::BudgetUpdate> OnReject(
      const budget::RejectSignal& signal);
  std::optional<budget::BudgetUpdate> OnAccept(
      const budget::AcceptSignal& signal);

  // Overrides the budget toward `dest`, e.g. to hold it fixed in a bench.
  void SetBudget(TaskId dest, Duration value) {
    runtime_.budgets.Set(dest, value);
  }

  TaskId id() const { return runtime_.config.id; }
  const TaskRuntime& runtime() const { return runtime_; }
  const TaskStats& stats() const { return stats_; }
  bool busy() const { return running_.has_value(); }
  size_t backlog() const;

 private:
  struct Running {
    std::vector<QueuedEvent> members;
    std::vector<Duration> queued;
    Timestamp start{};
    Duration exec{0};
  };

  void Admit(Event event, Timestamp now, TaskEffects& fx);
  void Pump(Timestamp now, TaskEffects& fx);
  void PumpDynamic(Timestamp now, TaskEffects& fx);
  void PumpFixed(Timestamp now, TaskEffects& fx);
  // Dynamic mode: moves queued events into the current batch and closes it
  // when the head cannot join or its flush time has come.
  void FormBatches(Timestamp now, TaskEffects& fx);
  void Submit();
  // Applies drop point 2 and starts execution; false when nothing survived.
  bool StartBatch(std::vector<QueuedEvent> members, Timestamp now,
                  TaskEffects& fx);
  Timestamp DeadlineOf(const QueuedEvent& q) const;
  // Returns true when the drop was converted into a probe.
  bool Drop(Event& event, DropPoint point, Duration excess,
            Duration queue_sum, TaskEffects& fx);
  int FixedBatchSize(Timestamp now);

  TaskRuntime runtime_;
  Logic logic_;
  CostFn cost_;
  budget::ProbeCounter probes_;
  RateMeter rate_;
  std::deque<QueuedEvent> queue_;
  Batch current_;
  // Closed batches waiting for the executor.
  std::deque<std::vector<QueuedEvent>> submitted_;
  std::optional<Running> running_;
  std::optional<Timestamp> pending_wakeup_;
  TaskStats stats_;
};

}  // namespace spotflow::engine

#endif  // SPOTFLOW_ENGINE_TASK_H_
