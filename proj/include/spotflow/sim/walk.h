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

#ifndef SPOTFLOW_SIM_WALK_H_
#define SPOTFLOW_SIM_WALK_H_

#include <optional>
#include <vector>

#include "spotflow/core/time.h"
#include "spotflow/tracking/road_network.h"

namespace spotflow::sim {

using tracking::VertexId;

// The entity moves from `from` to `to` starting at `start_ms`.
struct WalkLeg {
  double start_ms = 0;
  VertexId from = 0;
  VertexId to = 0;
  double length = 0;
};

struct WalkPosition {
  VertexId from = 0;
  VertexId to = 0;
  double offset = 0;  // metres travelled from `from`
  double length = 0;
};

class WalkTrace {
 public:
  WalkTrace(std::vector<WalkLeg> legs, double speed)
      : legs_(std::move(legs)), speed_(speed) {}

  WalkPosition At(Timestamp t) const;
  // The vertex within `fov_m` road metres of the entity, if any.
  std::optional<VertexId> VisibleVertex(Timestamp t, double fov_m) const;

  const std::vector<WalkLeg>& legs() const { return legs_; }
  double speed() const { return speed_; }

 private:
  std::vector<WalkLeg> legs_;
  double speed_;
};

// Seeded random walk at constant speed. At each vertex the next road is
// chosen uniformly among those not leading straight back; a dead end
// reverses. Covers [0, duration]. Throws ConfigError for an isolated start
// or a non-positive speed.
WalkTrace GenerateWalk(const tracking::RoadNetwork& net, VertexId start,
                       double speed, uint64_t seed, Duration duration);

}  // namespace spotflow::sim

#endif  // SPOTFLOW_SIM_WALK_H_
