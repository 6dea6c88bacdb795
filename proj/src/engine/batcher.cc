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

#include "spotflow/engine/batcher.h"

#include <algorithm>

namespace spotflow::engine {

ExtendOutcome TryExtendBatch(Batch& current, QueuedEvent& head, Timestamp now,
                             const ExecTimeModel& xi) {
  if (current.empty()) {
    current.deadline = head.deadline;
    current.members.push_back(std::move(head));
    return ExtendOutcome::kExtended;
  }
  const int next = current.size() + 1;
  if (next > xi.max_batch()) return ExtendOutcome::kClosed;
  const Timestamp limit = std::min(current.deadline, head.deadline);
  if (limit != kNoDeadline && now + xi.Eval(next) > limit) {
    return ExtendOutcome::kClosed;
  }
  current.deadline = limit;
  current.members.push_back(std::move(head));
  return ExtendOutcome::kExtended;
}

std::optional<Timestamp> FlushTime(const Batch& current,
                                   const ExecTimeModel& xi) {
  if (current.empty() || current.deadline == kNoDeadline) return std::nullopt;
  return current.deadline - xi.Eval(current.size());
}

bool DeadlineFlushDue(const Batch& current, Timestamp now,
                      const ExecTimeModel& xi) {
  auto t = FlushTime(current, xi);
  return t && now >= *t;
}

}  // namespace spotflow::engine
