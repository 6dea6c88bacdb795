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

#ifndef SPOTFLOW_BOUNDS_ORACLE_H_
#define SPOTFLOW_BOUNDS_ORACLE_H_

#include <optional>
#include <vector>

#include "spotflow/core/exec_time_model.h"

namespace spotflow::bounds {

// Largest m <= m_max with
//   (m - 1) * 1000 / omega + xi(m) <= headroom   and   xi(m) <= headroom / 2,
// found by descending from m_max. nullopt when m = 1 already fails.
std::optional<int> MaxStableBatch(double omega, const ExecTimeModel& xi,
                                  Duration headroom);

struct RateBound {
  double omega_max = 0;  // events/sec; +inf when unbounded
  int batch = 0;         // 0 when nothing is sustainable
};

// Highest input rate sustainable at fixed conditions: both batch constraints
// plus the service-rate condition omega <= m * 1000 / xi(m). Without any m
// satisfying xi(m) <= headroom / 2, falls back to streaming when
// xi(1) <= headroom.
RateBound MaxSustainableRate(const ExecTimeModel& xi, Duration headroom);

// The same search with only the two batch constraints. The queuing term
// shrinks as omega grows, so the rate is unbounded whenever some m fits.
RateBound MaxSustainableRateBatchOnly(const ExecTimeModel& xi,
                                      Duration headroom);

// Drop rate implied by input omega: max(0, omega - omega_max).
double ImpliedDropRate(double omega, double omega_max);

// Extra average latency per event from batching at size m, in ms:
//   (m - 1) / (2 omega) + xi(m) - xi(1).
double AvgLatencyIncrease(double omega, const ExecTimeModel& xi, int m);

struct CalibrationEntry {
  double rate = 0;
  int batch = 1;
  bool feasible = true;
};

// Rate grid 1, 10, 20, ..., max_rate.
std::vector<double> CalibrationRates(double max_rate = 1000, double step = 10);

// For each rate, the smallest batch whose service rate covers it while
// meeting both batch constraints. When none does, the largest stable batch
// (or 1) is used and the entry is marked infeasible.
std::vector<CalibrationEntry> Calibrate(const ExecTimeModel& xi,
                                        Duration headroom,
                                        const std::vector<double>& rates);

}  // namespace spotflow::bounds

#endif  // SPOTFLOW_BOUNDS_ORACLE_H_
