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

#ifndef SPOTFLOW_ENGINE_BATCHER_H_
#define SPOTFLOW_ENGINE_BATCHER_H_

#include <optional>
#include <vector>

#include "spotflow/core/event.h"
#include "spotflow/core/exec_time_model.h"
#include "spotflow/core/time.h"

namespace spotflow::engine {

// A queued event together with the local timing needed to batch it.
struct QueuedEvent {
  Event event;
  Timestamp arrival{};   // local clock
  Duration upstream{0};  // u at arrival
  Timestamp deadline{};  // delta = beta + a1, Timestamp::max() when unset
};

inline constexpr Timestamp kNoDeadline = Timestamp::max();

// The batch currently being accumulated. Its deadline is the earliest member
// deadline.
struct Batch {
  std::vector<QueuedEvent> members;
  Timestamp deadline = kNoDeadline;

  int size() const { return static_cast<int>(members.size()); }
  bool empty() const { return members.empty(); }
};

enum class ExtendOutcome { kExtended, kClosed };

// Batch admission test for the event at the head of the queue: the head joins
// iff now + xi(m+1) <= min(deadline, head deadline) and m+1 <= m_max. An empty
// batch always takes the head. On kClosed the caller executes `current` and
// starts a new batch with the head.
ExtendOutcome TryExtendBatch(Batch& current, QueuedEvent& head, Timestamp now,
                             const ExecTimeModel& xi);

// Local time at which a non-empty batch must be submitted: deadline - xi(m).
std::optional<Timestamp> FlushTime(const Batch& current,
                                   const ExecTimeModel& xi);

// True once now >= deadline - xi(m). Never true for an empty batch.
bool DeadlineFlushDue(const Batch& current, Timestamp now,
                      const ExecTimeModel& xi);

}  // namespace spotflow::engine

#endif  // SPOTFLOW_ENGINE_BATCHER_H_
