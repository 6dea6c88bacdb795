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

#ifndef SPOTFLOW_SIM_CONFIG_H_
#define SPOTFLOW_SIM_CONFIG_H_

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "spotflow/core/time.h"
#include "spotflow/sim/links.h"
#include "spotflow/tracking/tracker.h"

namespace spotflow::sim {

enum class BatchingKind { kStreaming, kStatic, kDynamic, kNob };

struct BatchingSpec {
  BatchingKind kind = BatchingKind::kDynamic;
  int static_batch = 1;
};

// "streaming", "static:N", "dynamic" or "nob". Throws ConfigError.
BatchingSpec ParseBatching(const std::string& text);
std::string BatchingName(const BatchingSpec& spec);

struct AffineCost {
  Duration base{0};
  Duration per_item{1};
};

// Multiplies the actual cost of a task kind (va, cr or all) from `at` on.
struct Slowdown {
  Timestamp at{};
  std::string kind;
  double factor = 1;
};

struct ScenarioConfig {
  // Road network. "generated" builds the synthetic street graph.
  std::string graph_file = "generated";
  uint64_t graph_seed = 7;
  std::string placement_file;  // empty: cameras around the start vertex
  uint32_t camera_count = 1000;
  double fps = 1;
  double entity_speed = 1;  // m/s
  tracking::TlKind tl_kind = tracking::TlKind::kBfs;
  double tl_peak_speed = 4;  // es, m/s
  Duration gamma{15'000};
  BatchingSpec batching;
  int m_max = 25;
  bool drops_enabled = false;
  Duration epsilon_max{1'000};
  int probe_k = 100;
  int va_instances = 10;
  int cr_instances = 10;
  uint32_t frame_bytes = 2900;
  std::vector<LinkChange> link_schedule;
  std::map<std::string, Duration> skew_map;  // device name -> skew
  uint64_t seed = 1;
  Duration duration{600'000};

  uint32_t start_vertex = 0;
  double fov_m = 1.5;
  double fixed_len = 0;  // TL-BFS road length; 0 = mean road length
  AffineCost va_cost{Duration(5), Duration(10)};
  AffineCost cr_cost{Duration(54), Duration(67)};
  LinkParams link_defaults;
  bool avoid_drop_positive = true;
  double tp_rate = 1.0;
  double fp_rate = 0.0;
  size_t history_capacity = 100'000;
  int nodes = 10;
  bool xi_estimate = false;
  uint32_t detection_bytes = 256;
  Duration drain{0};  // extra time after the last frame
  std::vector<Slowdown> slowdowns;

  // Directory that relative file names are resolved against.
  std::string base_dir = ".";

  // Throws ConfigError on inconsistent values.
  void Validate() const;
  std::string ResolvePath(const std::string& file) const;
};

// Flat `key = value` lines, '#' comments. link_change, skew and slowdown may
// repeat:
//   link_change = <t_ms> <inter|head|all> <bandwidth> <latency_ms>
//   skew = <device> <ms>
//   slowdown = <t_ms> <va|cr|all> <factor>
// Throws ConfigError naming the line.
ScenarioConfig ParseScenarioConfig(std::istream& in);
ScenarioConfig LoadScenarioConfig(const std::string& path);

// Duration with an optional unit: 1500, 1500ms, 15s, 10min.
Duration ParseDuration(const std::string& text);

}  // namespace spotflow::sim

#endif  // SPOTFLOW_SIM_CONFIG_H_
