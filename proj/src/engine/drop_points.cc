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

#include "spotflow/engine/drop_points.h"

namespace spotflow::engine {

Verdict DropBeforeQueuing(const EventHeader& header, Duration upstream,
                          const ExecTimeModel& xi,
                          const budget::Budget& budget) {
  if (header.Undroppable() || !budget) return Verdict::kKeep;
  return upstream + xi.Eval(1) <= *budget ? Verdict::kKeep : Verdict::kDrop;
}

std::vector<size_t> DropBeforeExec(const std::vector<ExecCandidate>& batch,
                                   const ExecTimeModel& xi,
                                   const budget::Budget& budget) {
  std::vector<size_t> kept;
  kept.reserve(batch.size());
  if (batch.empty()) return kept;
  const Duration exec = xi.Eval(static_cast<int>(batch.size()));
  for (size_t i = 0; i < batch.size(); ++i) {
    const ExecCandidate& c = batch[i];
    if (c.header->Undroppable() || !budget ||
        c.upstream + c.queued + exec <= *budget) {
      kept.push_back(i);
    }
  }
  return kept;
}

Verdict DropBeforeTransmit(const EventHeader& header, Duration upstream,
                           Duration processing, TaskId dest,
                           const budget::BudgetTable& budgets) {
  budget::Budget b = budgets.Get(dest);
  if (header.Undroppable() || !b) return Verdict::kKeep;
  return upstream + processing <= *b ? Verdict::kKeep : Verdict::kDrop;
}

}  // namespace spotflow::engine
