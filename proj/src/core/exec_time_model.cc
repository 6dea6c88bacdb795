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

#include "spotflow/core/exec_time_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spotflow {
namespace {

// Pool-adjacent-violators: least-squares nondecreasing fit, equal weights.
std::vector<double> IsotonicFit(const std::vector<double>& values) {
  struct Block {
    double sum;
    int count;
  };
  std::vector<Block> blocks;
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1) {
      const Block& last = blocks.back();
      const Block& prev = blocks[blocks.size() - 2];
      if (prev.sum / prev.count <= last.sum / last.count) break;
      Block merged{prev.sum + last.sum, prev.count + last.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& b : blocks) {
    out.insert(out.end(), b.count, b.sum / b.count);
  }
  return out;
}

std::vector<Duration> ToStrictTable(const std::vector<double>& ms) {
  std::vector<Duration> table;
  table.reserve(ms.size());
  for (double v : ms) {
    auto d = Duration(static_cast<int64_t>(std::llround(std::max(v, 0.0))));
    if (!table.empty() && d <= table.back()) d = table.back() + Duration(1);
    table.push_back(d);
  }
  return table;
}

}  // namespace

ExecTimeModel::ExecTimeModel(std::vector<Duration> table)
    : table_(std::move(table)) {}

ExecTimeModel ExecTimeModel::FromTable(std::vector<Duration> table) {
  if (table.empty()) {
    throw std::invalid_argument("execution-time table is empty");
  }
  for (size_t i = 1; i < table.size(); ++i) {
    if (table[i] <= table[i - 1]) {
      throw std::invalid_argument(
          "execution time must strictly increase with batch size (b=" +
          std::to_string(i + 1) + ")");
    }
  }
  return ExecTimeModel(std::move(table));
}

ExecTimeModel ExecTimeModel::Affine(Duration base, Duration per_item,
                                    int max_batch) {
  if (max_batch < 1) throw std::invalid_argument("max_batch must be >= 1");
  if (max_batch > 1 && per_item <= Duration(0)) {
    throw std::invalid_argument("affine per-item cost must be positive");
  }
  if (base < Duration(0)) throw std::invalid_argument("negative base cost");
  std::vector<Duration> table;
  table.reserve(max_batch);
  for (int b = 1; b <= max_batch; ++b) table.push_back(base + per_item * b);
  return FromTable(std::move(table));
}

ExecTimeModel ExecTimeModel::Empirical(
    std::vector<std::pair<int, double>> points, int max_batch) {
  if (points.empty() || max_batch < 1) {
    throw std::invalid_argument("empirical model needs points and max_batch");
  }
  std::sort(points.begin(), points.end());
  std::vector<double> ms(max_batch);
  for (int b = 1; b <= max_batch; ++b) {
    if (b <= points.front().first) {
      ms[b - 1] = points.front().second;
      continue;
    }
    if (b >= points.back().first) {
      ms[b - 1] = points.back().second;
      continue;
    }
    auto hi = std::lower_bound(
        points.begin(), points.end(), b,
        [](const std::pair<int, double>& p, int v) { return p.first < v; });
    auto lo = hi - 1;
    double f = static_cast<double>(b - lo->first) / (hi->first - lo->first);
    ms[b - 1] = lo->second + f * (hi->second - lo->second);
  }
  return FromTable(ToStrictTable(IsotonicFit(ms)));
}

Duration ExecTimeModel::Eval(int batch) const {
  if (batch < 1 || batch > max_batch()) {
    throw std::out_of_range("batch size " + std::to_string(batch) +
                            " outside [1, " + std::to_string(max_batch()) +
                            "]");
  }
  return table_[batch - 1];
}

OnlineExecTimeEstimator::OnlineExecTimeEstimator(const ExecTimeModel& prior)
    : model_(prior) {
  estimate_.reserve(prior.max_batch());
  for (Duration d : prior.table()) estimate_.push_back(d.count());
}

void OnlineExecTimeEstimator::Observe(int batch, Duration actual) {
  if (batch < 1 || batch > static_cast<int>(estimate_.size())) {
    throw std::out_of_range("observed batch size out of range");
  }
  double& e = estimate_[batch - 1];
  e = (1.0 - kSmoothing) * e + kSmoothing * static_cast<double>(actual.count());
  estimate_ = IsotonicFit(estimate_);
  model_ = ExecTimeModel::FromTable(ToStrictTable(estimate_));
}

}  // namespace spotflow
