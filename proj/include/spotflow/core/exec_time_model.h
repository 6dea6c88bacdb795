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

#ifndef SPOTFLOW_CORE_EXEC_TIME_MODEL_H_
#define SPOTFLOW_CORE_EXEC_TIME_MODEL_H_

#include <utility>
#include <vector>

#include "spotflow/core/time.h"

namespace spotflow {

// Estimated batch execution duration xi(b) for 1 <= b <= max_batch.
// Always strictly increasing in b.
class ExecTimeModel {
 public:
  // xi(b) = base + per_item * b.
  static ExecTimeModel Affine(Duration base, Duration per_item, int max_batch);

  // Piecewise-linear interpolation through (batch, ms) points, held flat
  // outside the sampled range and then forced strictly increasing.
  static ExecTimeModel Empirical(std::vector<std::pair<int, double>> points,
                                 int max_batch);

  // Throws std::out_of_range when b is outside [1, max_batch].
  Duration Eval(int batch) const;

  int max_batch() const { return static_cast<int>(table_.size()); }

  // Per-batch-size table, index 0 holds xi(1).
  const std::vector<Duration>& table() const { return table_; }

  // Throws std::invalid_argument unless the table is non-empty and strictly
  // increasing.
  static ExecTimeModel FromTable(std::vector<Duration> table);

 private:
  explicit ExecTimeModel(std::vector<Duration> table);

  std::vector<Duration> table_;
};

// Online fit of xi: per-batch-size exponential moving average seeded from a
// prior model, kept monotone by isotonic regression and a 1 ms step floor.
class OnlineExecTimeEstimator {
 public:
  static constexpr double kSmoothing = 0.2;

  explicit OnlineExecTimeEstimator(const ExecTimeModel& prior);

  void Observe(int batch, Duration actual);

  const ExecTimeModel& model() const { return model_; }

 private:
  std::vector<double> estimate_;
  ExecTimeModel model_;
};

}  // namespace spotflow

#endif  // SPOTFLOW_CORE_EXEC_TIME_MODEL_H_
