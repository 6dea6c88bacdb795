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

#ifndef SPOTFLOW_SIM_SCENARIO_H_
#define SPOTFLOW_SIM_SCENARIO_H_

#include <map>
#include <string>
#include <vector>

#include "spotflow/metrics/records.h"
#include "spotflow/sim/config.h"

namespace spotflow::sim {

// One TL decision: the active-set size right after a detection batch.
struct TlDecision {
  Timestamp t{};
  bool reacquired = false;
  uint32_t active = 0;
  double radius = 0;
};

struct BatchLog {
  std::string task;
  Timestamp t{};
  int size = 0;
};

struct RunOptions {
  // Wall-clock pacing factor for real-time mode; 0 runs as fast as possible.
  double pacing = 0;
  bool record_batches = false;
};

struct ScenarioResult {
  std::vector<metrics::EventRecord> events;
  std::vector<metrics::TimelineRow> timeline;
  metrics::Summary summary;
  std::vector<TlDecision> tl_log;
  std::vector<BatchLog> batches;
  std::map<std::string, uint64_t> drops_by_point;  // "cr@dp2" -> count
  uint64_t probes = 0;
  uint64_t signals = 0;
  uint64_t signals_ignored = 0;
  uint64_t frames_suppressed = 0;  // frames of inactive cameras
  size_t vertices = 0;
  size_t roads = 0;
  double mean_road_length = 0;
  double fixed_len = 0;

  // Extra summary fields beyond the fixed schema, as a JSON object.
  std::string ExtraJson(const ScenarioConfig& config) const;
};

// Deterministic run of the camera-network pipeline FC -> VA -> CR -> UV with
// TL on the CR fork. Throws ConfigError for unusable inputs.
ScenarioResult RunScenario(const ScenarioConfig& config,
                           const RunOptions& options = {});

// events.csv, timeline.csv and summary.json under `dir` (created if needed).
void WriteScenarioOutputs(const ScenarioResult& result,
                          const ScenarioConfig& config,
                          const std::string& dir);

}  // namespace spotflow::sim

#endif  // SPOTFLOW_SIM_SCENARIO_H_
