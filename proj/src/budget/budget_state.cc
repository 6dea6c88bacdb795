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

#include "spotflow/budget/budget_state.h"

#include <string>

#include "spotflow/core/errors.h"

namespace spotflow::budget {

TimingHistory::TimingHistory(size_t capacity) : capacity_(capacity) {}

void TimingHistory::Record(EventId event, const TimingTuple& tuple) {
  if (capacity_ == 0) return;
  auto [it, inserted] = tuples_.insert_or_assign(event, tuple);
  if (!inserted) return;
  order_.push_back(event);
  while (tuples_.size() > capacity_ && !order_.empty()) {
    // Acknowledged tuples leave stale ids in `order_`; skip them.
    if (tuples_.erase(order_.front()) > 0) ++evicted_;
    order_.pop_front();
  }
  // Keep the id queue from growing without bound under heavy acking.
  if (order_.size() > 2 * capacity_ + 16) {
    std::deque<EventId> live;
    for (EventId id : order_) {
      if (tuples_.contains(id)) live.push_back(id);
    }
    order_.swap(live);
  }
}

const TimingTuple* TimingHistory::Find(EventId event) const {
  auto it = tuples_.find(event);
  return it == tuples_.end() ? nullptr : &it->second;
}

void TimingHistory::Erase(EventId event) { tuples_.erase(event); }

BudgetTable::BudgetTable(std::span<const TaskId> downstream) {
  for (TaskId t : downstream) budgets_.emplace(t, std::nullopt);
}

Budget BudgetTable::Get(TaskId dest) const {
  auto it = budgets_.find(dest);
  if (it == budgets_.end()) {
    throw RoutingError("task " + std::to_string(Index(dest)) +
                       " is not a downstream of this task");
  }
  return it->second;
}

void BudgetTable::Set(TaskId dest, Duration value) {
  auto it = budgets_.find(dest);
  if (it == budgets_.end()) {
    throw RoutingError("task " + std::to_string(Index(dest)) +
                       " is not a downstream of this task");
  }
  it->second = value;
}

Budget BudgetTable::Effective() const {
  Budget best;
  for (const auto& [dest, b] : budgets_) {
    if (!b) return std::nullopt;
    if (!best || *b > *best) best = b;
  }
  return best;
}

bool BudgetTable::AnyUnset() const {
  for (const auto& [dest, b] : budgets_) {
    if (!b) return true;
  }
  return false;
}

std::vector<TaskId> BudgetTable::downstream() const {
  std::vector<TaskId> out;
  out.reserve(budgets_.size());
  for (const auto& [dest, b] : budgets_) out.push_back(dest);
  return out;
}

}  // namespace spotflow::budget
