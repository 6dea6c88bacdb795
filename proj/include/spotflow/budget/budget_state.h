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

#ifndef SPOTFLOW_BUDGET_BUDGET_STATE_H_
#define SPOTFLOW_BUDGET_BUDGET_STATE_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "spotflow/core/event.h"
#include "spotflow/core/time.h"

namespace spotflow::budget {

// A completion budget; nullopt means "not assigned yet" and behaves as +inf.
using Budget = std::optional<Duration>;

// <d, q, m> kept per processed event, plus the downstream it was sent to.
struct TimingTuple {
  Duration departure{0};
  Duration queued{0};
  int batch_size = 1;
  TaskId downstream{};
};

// Bounded store of timing tuples with oldest-first eviction.
class TimingHistory {
 public:
  static constexpr size_t kDefaultCapacity = 100'000;

  explicit TimingHistory(size_t capacity = kDefaultCapacity);

  void Record(EventId event, const TimingTuple& tuple);
  const TimingTuple* Find(EventId event) const;
  void Erase(EventId event);

  size_t size() const { return tuples_.size(); }
  size_t capacity() const { return capacity_; }
  uint64_t evicted() const { return evicted_; }

 private:
  size_t capacity_;
  std::deque<EventId> order_;
  std::unordered_map<EventId, TimingTuple> tuples_;
  uint64_t evicted_ = 0;
};

// One budget per downstream task.
class BudgetTable {
 public:
  BudgetTable() = default;
  explicit BudgetTable(std::span<const TaskId> downstream);

  bool Has(TaskId dest) const { return budgets_.contains(dest); }

  // Throws RoutingError for a task that is not a downstream.
  Budget Get(TaskId dest) const;
  void Set(TaskId dest, Duration value);

  // Budget consulted before the destination is known: the largest assigned
  // budget, or unset while any downstream is still unassigned.
  Budget Effective() const;

  bool AnyUnset() const;
  std::vector<TaskId> downstream() const;

 private:
  std::map<TaskId, Budget> budgets_;
};

}  // namespace spotflow::budget

#endif  // SPOTFLOW_BUDGET_BUDGET_STATE_H_
