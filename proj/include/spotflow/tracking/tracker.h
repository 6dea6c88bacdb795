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

#ifndef SPOTFLOW_TRACKING_TRACKER_H_
#define SPOTFLOW_TRACKING_TRACKER_H_

#include <span>
#include <vector>

#include "spotflow/core/time.h"
#include "spotflow/tracking/road_network.h"

namespace spotflow::tracking {

enum class TlKind { kBase, kBfs, kWbfs };

// Parses "base", "bfs" or "wbfs"; throws ConfigError otherwise.
TlKind ParseTlKind(const std::string& name);
const char* TlKindName(TlKind kind);

struct Detection {
  CameraId camera = 0;
  Timestamp frame_ts{};
  bool matched = false;
};

struct CameraCommand {
  CameraId camera = 0;
  bool activate = false;
};

struct TrackerConfig {
  TlKind kind = TlKind::kWbfs;
  double peak_speed = 1.0;  // es, m/s
  double fixed_len = 84.5;  // road length assumed by TL-BFS
  VertexId start = 0;
};

struct TrackState {
  VertexId last_seen_location = 0;
  Timestamp last_seen_time{};
  // Time of the latest decision. The radius grows with now - last_seen_time,
  // so detection latency widens the spotlight.
  Timestamp decided_at{};
  std::vector<bool> active;  // by camera id
  size_t active_count = 0;
};

// Spotlight tracking logic. Commands are deltas against the current set.
class Tracker {
 public:
  Tracker(const RoadNetwork& net, const CameraPlacement& placement,
          TrackerConfig config);

  // Initial commands at `t0`. FCs start active; BFS and WBFS shrink to the
  // cameras at the start vertex, TL-Base keeps everything.
  std::vector<CameraCommand> Init(Timestamp t0);

  // One batch of CR output. A positive newer than the last sighting resets
  // the spotlight to the detecting camera; the latest frame wins, then the
  // smallest camera id. Otherwise the spotlight grows from the last sighting
  // to cover es * (now - last_seen_time).
  std::vector<CameraCommand> ProcessDetections(
      std::span<const Detection> batch, Timestamp now);

  const TrackState& state() const { return state_; }
  // True when the last processed batch moved the last sighting.
  bool reacquired() const { return reacquired_; }
  const TrackerConfig& config() const { return config_; }
  double Radius() const;

  // Spotlight for a given radius around a vertex, per the configured kind.
  std::vector<CameraId> Spotlight(VertexId origin, double radius) const;

 private:
  std::vector<CameraCommand> ApplySet(const std::vector<CameraId>& cameras);

  const RoadNetwork& net_;
  const CameraPlacement& placement_;
  TrackerConfig config_;
  TrackState state_;
  bool reacquired_ = false;
};

}  // namespace spotflow::tracking

#endif  // SPOTFLOW_TRACKING_TRACKER_H_
