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

#include "spotflow/tracking/tracker.h"

#include <algorithm>

#include "spotflow/core/errors.h"
#include "spotflow/tracking/spotlight.h"

namespace spotflow::tracking {

TlKind ParseTlKind(const std::string& name) {
  if (name == "base") return TlKind::kBase;
  if (name == "bfs") return TlKind::kBfs;
  if (name == "wbfs") return TlKind::kWbfs;
  throw ConfigError("unknown tracking logic '" + name +
                    "' (expected base, bfs or wbfs)");
}

const char* TlKindName(TlKind kind) {
  switch (kind) {
    case TlKind::kBase:
      return "base";
    case TlKind::kBfs:
      return "bfs";
    case TlKind::kWbfs:
      return "wbfs";
  }
  return "?";
}

Tracker::Tracker(const RoadNetwork& net, const CameraPlacement& placement,
                 TrackerConfig config)
    : net_(net), placement_(placement), config_(config) {
  if (!net_.Has(config_.start)) {
    throw StateError("unknown start vertex " + std::to_string(config_.start));
  }
  state_.last_seen_location = config_.start;
  state_.active.assign(placement_.camera_count(), true);
  state_.active_count = placement_.camera_count();
}

std::vector<CameraId> Tracker::Spotlight(VertexId origin, double radius) const {
  if (config_.kind == TlKind::kBfs) {
    return UnweightedBfs(net_, origin, radius, config_.fixed_len, placement_);
  }
  return WeightedBfs(net_, origin, radius, placement_);
}

double Tracker::Radius() const {
  return SpotlightRadius(state_.last_seen_time, state_.decided_at,
                         config_.peak_speed);
}

std::vector<CameraCommand> Tracker::ApplySet(
    const std::vector<CameraId>& cameras) {
  std::vector<bool> next(placement_.camera_count(), false);
  for (CameraId c : cameras) next[c] = true;
  std::vector<CameraCommand> commands;
  for (CameraId c = 0; c < next.size(); ++c) {
    if (next[c] != state_.active[c]) commands.push_back({c, next[c]});
  }
  state_.active = std::move(next);
  state_.active_count = cameras.size();
  return commands;
}

std::vector<CameraCommand> Tracker::Init(Timestamp t0) {
  state_.last_seen_location = config_.start;
  state_.last_seen_time = t0;
  state_.decided_at = t0;
  if (config_.kind == TlKind::kBase) return {};
  return ApplySet(Spotlight(config_.start, 0.0));
}

std::vector<CameraCommand> Tracker::ProcessDetections(
    std::span<const Detection> batch, Timestamp now) {
  const Detection* best = nullptr;
  for (const Detection& d : batch) {
    if (!d.matched || d.frame_ts < state_.last_seen_time) continue;
    if (best == nullptr || d.frame_ts > best->frame_ts ||
        (d.frame_ts == best->frame_ts && d.camera < best->camera)) {
      best = &d;
    }
  }
  reacquired_ = best != nullptr;
  state_.decided_at = std::max(state_.decided_at, now);
  if (best != nullptr) {
    state_.last_seen_location = placement_.VertexOf(best->camera);
    state_.last_seen_time = best->frame_ts;
    if (config_.kind == TlKind::kBase) return {};
    return ApplySet({best->camera});
  }
  if (config_.kind == TlKind::kBase) return {};
  return ApplySet(Spotlight(state_.last_seen_location, Radius()));
}

}  // namespace spotflow::tracking
