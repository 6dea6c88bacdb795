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

#include "spotflow/engine/batch_size_policy.h"

#include <algorithm>

#include "spotflow/core/errors.h"

namespace spotflow::engine {

NobTable::NobTable(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("NOB lookup table is empty");
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& a, const Entry& b) { return a.rate < b.rate; });
}

int NobTable::Lookup(double rate) const {
  if (entries_.empty()) throw ConfigError("NOB lookup table is empty");
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), rate,
      [](const Entry& e, double r) { return e.rate < r; });
  if (it == entries_.end()) return entries_.back().batch;
  return it->batch;
}

int SelectBatchSizeStatic(const StaticMode& mode) { return mode.batch; }

int SelectBatchSizeNob(double rate, const NobTable& table) {
  return table.Lookup(rate);
}

RateMeter::RateMeter(Duration window) : window_(window) {}

void RateMeter::Arrive(Timestamp t) { arrivals_.push_back(t); }

double RateMeter::Rate(Timestamp now) {
  while (!arrivals_.empty() && arrivals_.front() <= now - window_) {
    arrivals_.pop_front();
  }
  return static_cast<double>(arrivals_.size()) * 1000.0 /
         static_cast<double>(window_.count());
}

}  // namespace spotflow::engine
