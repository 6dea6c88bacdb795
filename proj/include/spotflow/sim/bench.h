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

#ifndef SPOTFLOW_SIM_BENCH_H_
#define SPOTFLOW_SIM_BENCH_H_

#include <optional>
#include <string>
#include <vector>

#include "spotflow/core/exec_time_model.h"
#include "spotflow/core/time.h"

namespace spotflow::sim {

// Constant-rate source -> [optional upstream stage] -> task -> sink. Both
// stages batch dynamically; the task is the one measured and slowed down.
struct BenchConfig {
  double rate = 10.0;  // events per second, evenly spaced
  ExecTimeModel xi = ExecTimeModel::Affine(Duration(100), Duration(100), 25);
  std::optional<ExecTimeModel> upstream_xi;
  Duration gamma{2000};
  // Pins the task's budget towards the sink; the protocol drives it when
  // unset.
  std::optional<Duration> pinned_budget;
  bool drops_enabled = true;
  Duration epsilon_max{1000};
  int probe_k = 100;
  // Execution-time multipliers for the task from the given time on; the
  // last applicable entry wins.
  std::vector<std::pair<Timestamp, double>> slowdowns;
  Duration duration{300000};
};

enum class BenchOutcome { kInFlight, kDelivered, kDelayed, kDropped };

struct BenchEvent {
  Timestamp source{};
  std::optional<Timestamp> sink;
  BenchOutcome outcome = BenchOutcome::kInFlight;
  bool probe = false;
  int batch = 0;  // size of the batch it ran in, 0 if never executed
};

struct BenchBatch {
  Timestamp start{};
  int size = 0;
};

struct BenchBudget {
  Timestamp t{};
  std::string task;  // "src", "up" or "t"
  Duration value{0};
};

struct BenchResult {
  std::vector<BenchEvent> events;
  std::vector<BenchBatch> batches;
  std::vector<BenchBudget> budgets;  // budgets after each applied signal

  // Most frequent batch size among batches started in [from, to); ties go to
  // the larger size.
  int ModalBatch(Timestamp from, Timestamp to) const;
  // Events per second over sources in [from, to).
  double DeliveredRate(Timestamp from, Timestamp to) const;
  double DroppedRate(Timestamp from, Timestamp to) const;
};

BenchResult RunBench(const BenchConfig& config);

}  // namespace spotflow::sim

#endif  // SPOTFLOW_SIM_BENCH_H_
