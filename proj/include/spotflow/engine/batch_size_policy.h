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

#ifndef SPOTFLOW_ENGINE_BATCH_SIZE_POLICY_H_
#define SPOTFLOW_ENGINE_BATCH_SIZE_POLICY_H_

#include <deque>
#include <variant>
#include <vector>

#include "spotflow/core/time.h"

namespace spotflow::engine {

// Rate (events/sec) -> batch size lookup used by the near-optimal baseline.
class NobTable {
 public:
  struct Entry {
    double rate = 0;
    int batch = 1;
  };

  NobTable() = default;
  // Throws ConfigError when empty. Entries are sorted by rate.
  explicit NobTable(std::vector<Entry> entries);

  // Entry for the smallest tabulated rate >= `rate`; the last entry when the
  // rate exceeds the table.
  int Lookup(double rate) const;

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

struct StreamingMode {};
struct StaticMode {
  int batch = 1;
};
struct DynamicMode {};
struct NobMode {
  NobTable table;
};

using BatchingMode = std::variant<StreamingMode, StaticMode, DynamicMode,
                                  NobMode>;

int SelectBatchSizeStatic(const StaticMode& mode);
int SelectBatchSizeNob(double rate, const NobTable& table);

// Input rate over a sliding window of arrival times.
class RateMeter {
 public:
  explicit RateMeter(Duration window = Duration(10'000));

  void Arrive(Timestamp t);
  // Events/sec over the window ending at `now`.
  double Rate(Timestamp now);

 private:
  Duration window_;
  std::deque<Timestamp> arrivals_;
};

}  // namespace spotflow::engine

#endif  // SPOTFLOW_ENGINE_BATCH_SIZE_POLICY_H_
