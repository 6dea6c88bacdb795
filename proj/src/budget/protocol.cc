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

#include "spotflow/budget/protocol.h"

#include <algorithm>
#include <cmath>

namespace spotflow::budget {
namespace {

Duration ScaledShare(Duration amount, Duration part, Duration whole) {
  // amount * part / whole, rounded to the nearest millisecond.
  long double v = static_cast<long double>(amount.count()) * part.count() /
                  whole.count();
  return Duration(static_cast<int64_t>(std::llround(v)));
}

}  // namespace

Duration ComputeReduceLambda(Duration excess, Duration queued,
                             Duration queue_sum, const ExecTimeModel& xi,
                             int batch_size) {
  if (queue_sum <= Duration(0) || queued <= Duration(0) ||
      excess <= Duration(0)) {
    return Duration(0);
  }
  Duration proportional = ScaledShare(excess, queued, queue_sum);
  Duration floor_gap = xi.Eval(batch_size) - xi.Eval(1);
  return std::max(Duration(0), std::min(proportional, floor_gap));
}

Duration ComputeIncreaseLambda(Duration early_by, Duration exec_here,
                               Duration exec_sum, Duration queued,
                               int batch_size, const ExecTimeModel& xi) {
  if (exec_sum <= Duration(0) || batch_size < 1 || early_by <= Duration(0)) {
    return Duration(0);
  }
  Duration proportional = ScaledShare(early_by, exec_here, exec_sum);
  const int m_max = xi.max_batch();
  const int m = std::min(batch_size, m_max);
  Duration fill = ScaledShare(queued, Duration(m_max - m), Duration(m));
  Duration headroom = fill + (xi.Eval(m_max) - xi.Eval(m));
  return std::max(Duration(0), std::min(proportional, headroom));
}

std::optional<BudgetUpdate> ApplyReject(BudgetTable& budgets,
                                        const TimingHistory& history,
                                        const RejectSignal& signal,
                                        const ExecTimeModel& xi) {
  const TimingTuple* tuple = history.Find(signal.event);
  if (tuple == nullptr) return std::nullopt;
  Duration lambda = ComputeReduceLambda(signal.excess, tuple->queued,
                                        signal.queue_sum, xi,
                                        tuple->batch_size);
  Duration proposed = tuple->departure - lambda;
  Budget before = budgets.Get(tuple->downstream);
  Duration after = before ? std::min(proposed, *before) : proposed;
  budgets.Set(tuple->downstream, after);
  return BudgetUpdate{tuple->downstream, before, after};
}

std::optional<BudgetUpdate> ApplyAccept(BudgetTable& budgets,
                                        const TimingHistory& history,
                                        const AcceptSignal& signal,
                                        const ExecTimeModel& xi) {
  const TimingTuple* tuple = history.Find(signal.event);
  if (tuple == nullptr) return std::nullopt;
  Duration exec_here = xi.Eval(std::min(tuple->batch_size, xi.max_batch()));
  Duration lambda =
      ComputeIncreaseLambda(signal.early_by, exec_here, signal.exec_sum,
                            tuple->queued, tuple->batch_size, xi);
  Duration proposed = tuple->departure + lambda;
  Budget before = budgets.Get(tuple->downstream);
  Duration after = before ? std::max(proposed, *before) : proposed;
  budgets.Set(tuple->downstream, after);
  return BudgetUpdate{tuple->downstream, before, after};
}

std::optional<AcceptSignal> SinkEvaluate(std::span<const SinkArrival> batch,
                                         Duration gamma, Duration epsilon_max) {
  const SinkArrival* slowest = nullptr;
  for (const SinkArrival& a : batch) {
    if (slowest == nullptr || a.upstream > slowest->upstream) slowest = &a;
  }
  if (slowest == nullptr) return std::nullopt;
  Duration early = gamma - slowest->upstream;
  if (early <= epsilon_max) return std::nullopt;
  return AcceptSignal{slowest->header->source_id, early,
                      slowest->header->sum_exec};
}

ProbeCounter::ProbeCounter(int period) : period_(period) {}

bool ProbeCounter::OnDrop() {
  ++drops_;
  if (period_ > 0 && drops_ % static_cast<uint64_t>(period_) == 0) {
    ++probes_;
    return true;
  }
  return false;
}

}  // namespace spotflow::budget
