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

#include "spotflow/sim/scheduler.h"

#include <chrono>
#include <thread>

namespace spotflow::sim {

void Scheduler::At(Timestamp t, Action action) {
  if (t < now_) t = now_;
  queue_.push(Item{t, seq_++, std::move(action)});
}

void Scheduler::RunUntil(Timestamp end) {
  using WallClock = std::chrono::steady_clock;
  const auto wall_start = WallClock::now();
  const Timestamp virtual_start = now_;
  while (!queue_.empty() && queue_.top().t < end) {
    // The action may schedule more work, so move it out before popping.
    Item item = std::move(const_cast<Item&>(queue_.top()));
    queue_.pop();
    now_ = item.t;
    if (pacing_ > 0) {
      auto offset = std::chrono::duration<double, std::milli>(
          Millis(now_ - virtual_start) / pacing_);
      std::this_thread::sleep_until(
          wall_start + std::chrono::duration_cast<WallClock::duration>(offset));
    }
    item.action();
    ++executed_;
  }
  if (end > now_) now_ = end;
}

}  // namespace spotflow::sim
