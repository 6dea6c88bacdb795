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

#include "spotflow/sim/walk.h"

#include <algorithm>

#include "spotflow/core/errors.h"
#include "spotflow/core/rng.h"

namespace spotflow::sim {

WalkPosition WalkTrace::At(Timestamp t) const {
  const double ms = static_cast<double>(Millis(t));
  auto it = std::upper_bound(
      legs_.begin(), legs_.end(), ms,
      [](double x, const WalkLeg& leg) { return x < leg.start_ms; });
  if (it == legs_.begin()) {
    const WalkLeg& first = legs_.front();
    return {first.from, first.to, 0, first.length};
  }
  const WalkLeg& leg = *(it - 1);
  double offset = (ms - leg.start_ms) / 1000.0 * speed_;
  return {leg.from, leg.to, std::min(offset, leg.length), leg.length};
}

std::optional<VertexId> WalkTrace::VisibleVertex(Timestamp t,
                                                 double fov_m) const {
  WalkPosition p = At(t);
  if (p.offset <= fov_m) return p.from;
  if (p.length - p.offset <= fov_m) return p.to;
  return std::nullopt;
}

WalkTrace GenerateWalk(const tracking::RoadNetwork& net, VertexId start,
                       double speed, uint64_t seed, Duration duration) {
  if (!(speed > 0)) throw ConfigError("entity speed must be positive");
  if (!net.Has(start) || net.Neighbors(start).empty()) {
    throw ConfigError("walk start vertex " + std::to_string(start) +
                      " is missing or isolated");
  }
  Rng rng(MixKeys(seed, 0x77616c6bULL));
  std::vector<WalkLeg> legs;
  double t = 0;
  VertexId here = start;
  std::optional<VertexId> prev;
  const double end = static_cast<double>(duration.count());
  while (t <= end) {
    const auto& roads = net.Neighbors(here);
    std::vector<const tracking::Road*> options;
    for (const auto& r : roads) {
      if (!prev || r.to != *prev) options.push_back(&r);
    }
    const tracking::Road* next = nullptr;
    if (options.empty()) {
      for (const auto& r : roads) {
        if (r.to == *prev) next = &r;
      }
    } else {
      next = options[rng.Below(options.size())];
    }
    legs.push_back({t, here, next->to, next->length});
    t += next->length / speed * 1000.0;
    prev = here;
    here = next->to;
  }
  return WalkTrace(std::move(legs), speed);
}

}  // namespace spotflow::sim
