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

#ifndef SPOTFLOW_ENGINE_DROP_POINTS_H_
#define SPOTFLOW_ENGINE_DROP_POINTS_H_

#include <vector>

#include "spotflow/budget/budget_state.h"
#include "spotflow/core/event.h"
#include "spotflow/core/exec_time_model.h"

namespace spotflow::engine {

enum class Verdict { kKeep, kDrop };

enum class DropPoint { kBeforeQueuing = 1, kBeforeExec = 2, kBeforeTransmit = 3 };

// Drop point 1: u + xi(1) > budget. Unset budgets never drop; neither do
// probes or avoid-drop events. Equality keeps.
Verdict DropBeforeQueuing(const EventHeader& header, Duration upstream,
                          const ExecTimeModel& xi, const budget::Budget& budget);

// A batch member as seen by drop point 2.
struct ExecCandidate {
  const EventHeader* header = nullptr;
  Duration upstream{0};
  Duration queued{0};
};

// Drop point 2: indices of members with u + q + xi(m) <= budget, in order.
// `m` is the size of the batch as formed, evaluated once.
std::vector<size_t> DropBeforeExec(const std::vector<ExecCandidate>& batch,
                                   const ExecTimeModel& xi,
                                   const budget::Budget& budget);

// Drop point 3: u + pi > budget(dest). `budgets.Get` throws RoutingError for
// an unknown destination.
Verdict DropBeforeTransmit(const EventHeader& header, Duration upstream,
                           Duration processing, TaskId dest,
                           const budget::BudgetTable& budgets);

}  // namespace spotflow::engine

#endif  // SPOTFLOW_ENGINE_DROP_POINTS_H_
