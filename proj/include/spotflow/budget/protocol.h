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

#ifndef SPOTFLOW_BUDGET_PROTOCOL_H_
#define SPOTFLOW_BUDGET_PROTOCOL_H_

#include <cstdint>
#include <optional>
#include <span>

#include "spotflow/budget/budget_state.h"
#include "spotflow/budget/signals.h"
#include "spotflow/core/exec_time_model.h"

namespace spotflow::budget {

inline constexpr Duration kDefaultEpsilonMax{1000};
inline constexpr int kDefaultProbePeriod = 100;

// Budget reduction at an upstream task for a dropped event:
//   min(excess * queued / queue_sum, xi(m) - xi(1)),
// zero when nothing queued anywhere.
Duration ComputeReduceLambda(Duration excess, Duration queued,
                             Duration queue_sum, const ExecTimeModel& xi,
                             int batch_size);

// Budget increase at an upstream task for an early event:
//   min(early * exec_here / exec_sum,
//       (m_max - m) * queued / m + xi(m_max) - xi(m)).
Duration ComputeIncreaseLambda(Duration early_by, Duration exec_here,
                               Duration exec_sum, Duration queued,
                               int batch_size, const ExecTimeModel& xi);

// Outcome of applying one signal at one task.
struct BudgetUpdate {
  TaskId downstream{};
  Budget before;
  Duration after{0};
};

// beta(dest) <- min(d - lambda, beta_old), or d - lambda when unset.
// Returns nullopt (and leaves the table untouched) when the tuple is gone.
std::optional<BudgetUpdate> ApplyReject(BudgetTable& budgets,
                                        const TimingHistory& history,
                                        const RejectSignal& signal,
                                        const ExecTimeModel& xi);

// beta(dest) <- max(d + lambda, beta_old), or d + lambda when unset.
std::optional<BudgetUpdate> ApplyAccept(BudgetTable& budgets,
                                        const TimingHistory& history,
                                        const AcceptSignal& signal,
                                        const ExecTimeModel& xi);

// One sink arrival: the event header and its upstream time at the sink.
struct SinkArrival {
  const EventHeader* header = nullptr;
  Duration upstream{0};
};

// Picks the member with the largest upstream time and emits an accept when it
// still arrived more than `epsilon_max` ahead of `gamma`.
std::optional<AcceptSignal> SinkEvaluate(std::span<const SinkArrival> batch,
                                         Duration gamma, Duration epsilon_max);

// Every `period`-th drop at a task is turned into a probe instead.
class ProbeCounter {
 public:
  explicit ProbeCounter(int period = kDefaultProbePeriod);

  // Counts one would-be drop; true when this one must be forwarded as probe.
  bool OnDrop();

  uint64_t drops() const { return drops_; }
  uint64_t probes() const { return probes_; }

 private:
  int period_;
  uint64_t drops_ = 0;
  uint64_t probes_ = 0;
};

}  // namespace spotflow::budget

#endif  // SPOTFLOW_BUDGET_PROTOCOL_H_
