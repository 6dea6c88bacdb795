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

#ifndef SPOTFLOW_BUDGET_SIGNALS_H_
#define SPOTFLOW_BUDGET_SIGNALS_H_

#include "spotflow/core/event.h"
#include "spotflow/core/time.h"

namespace spotflow::budget {

// Sent upstream by a task that dropped event `event`.
struct RejectSignal {
  EventId event = 0;
  Duration excess{0};     // projected departure minus budget, > 0
  Duration queue_sum{0};  // queuing accumulated up to and including the dropper
};

// Sent by the sink for the slowest event of a batch that arrived early.
struct AcceptSignal {
  EventId event = 0;
  Duration early_by{0};  // gamma - upstream time at the sink
  Duration exec_sum{0};  // execution accumulated over tasks 1..n-1
};

}  // namespace spotflow::budget

#endif  // SPOTFLOW_BUDGET_SIGNALS_H_
