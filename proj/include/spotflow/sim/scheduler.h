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

#ifndef SPOTFLOW_SIM_SCHEDULER_H_
#define SPOTFLOW_SIM_SCHEDULER_H_

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "spotflow/core/time.h"

namespace spotflow::sim {

// Single-threaded virtual-time scheduler. Actions at the same instant run in
// the order they were scheduled.
class Scheduler {
 public:
  using Action = std::function<void()>;

  Timestamp now() const { return now_; }

  // `t` earlier than now() is clamped to now().
  void At(Timestamp t, Action action);
  void After(Duration d, Action action) { At(now_ + d, std::move(action)); }

  // Runs every action scheduled strictly before `end`, then sets now() = end.
  void RunUntil(Timestamp end);

  // Wall-clock pacing: one virtual second takes 1/speed real seconds.
  // Zero disables pacing.
  void SetPacing(double speed) { pacing_ = speed; }

  size_t pending() const { return queue_.size(); }
  uint64_t executed() const { return executed_; }

 private:
  struct Item {
    Timestamp t;
    uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Item& a, const Item& b) const {
      return a.t != b.t ? a.t > b.t : a.seq > b.seq;
    }
  };

  Timestamp now_{};
  uint64_t seq_ = 0;
  uint64_t executed_ = 0;
  double pacing_ = 0;
  std::priority_queue<Item, std::vector<Item>, Later> queue_;
};

}  // namespace spotflow::sim

#endif  // SPOTFLOW_SIM_SCHEDULER_H_
