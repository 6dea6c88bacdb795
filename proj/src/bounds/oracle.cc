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

#include "spotflow/bounds/oracle.h"

#include <algorithm>
#include <limits>

namespace spotflow::bounds {
namespace {

double Ms(Duration d) { return static_cast<double>(d.count()); }

bool MeetsConstraints(int m, double omega, const ExecTimeModel& xi,
                      Duration headroom) {
  const double h = Ms(headroom);
  const double exec = Ms(xi.Eval(m));
  const double fill = (m - 1) * 1000.0 / omega;
  return fill + exec <= h && exec <= h / 2;
}

double ServiceRate(int m, const ExecTimeModel& xi) {
  return m * 1000.0 / Ms(xi.Eval(m));
}

}  // namespace

std::optional<int> MaxStableBatch(double omega, const ExecTimeModel& xi,
                                  Duration headroom) {
  if (!(omega > 0)) return std::nullopt;
  for (int m = xi.max_batch(); m >= 1; --m) {
    if (MeetsConstraints(m, omega, xi, headroom)) return m;
  }
  return std::nullopt;
}

RateBound MaxSustainableRate(const ExecTimeModel& xi, Duration headroom) {
  RateBound best;
  const double h = Ms(headroom);
  for (int m = 1; m <= xi.max_batch(); ++m) {
    const double exec = Ms(xi.Eval(m));
    if (exec > h / 2) break;
    // At omega = service rate the fill term is (m-1) xi(m) / m, which fits
    // because xi(m) <= h/2.
    const double rate = ServiceRate(m, xi);
    if (!MeetsConstraints(m, rate, xi, headroom)) continue;
    if (rate >= best.omega_max) best = {rate, m};
  }
  if (best.batch == 0 && Ms(xi.Eval(1)) <= h) best = {ServiceRate(1, xi), 1};
  return best;
}

RateBound MaxSustainableRateBatchOnly(const ExecTimeModel& xi,
                                      Duration headroom) {
  const double h = Ms(headroom);
  RateBound out;
  for (int m = 1; m <= xi.max_batch(); ++m) {
    if (Ms(xi.Eval(m)) > h / 2) break;
    out = {std::numeric_limits<double>::infinity(), m};
  }
  return out;
}

double ImpliedDropRate(double omega, double omega_max) {
  return std::max(0.0, omega - omega_max);
}

double AvgLatencyIncrease(double omega, const ExecTimeModel& xi, int m) {
  return (m - 1) * 1000.0 / (2 * omega) + Ms(xi.Eval(m)) - Ms(xi.Eval(1));
}

std::vector<double> CalibrationRates(double max_rate, double step) {
  std::vector<double> rates{1};
  for (double r = step; r <= max_rate + 1e-9; r += step) rates.push_back(r);
  return rates;
}

std::vector<CalibrationEntry> Calibrate(const ExecTimeModel& xi,
                                        Duration headroom,
                                        const std::vector<double>& rates) {
  std::vector<CalibrationEntry> table;
  table.reserve(rates.size());
  for (double rate : rates) {
    CalibrationEntry e{rate, 0, false};
    for (int m = 1; m <= xi.max_batch(); ++m) {
      if (ServiceRate(m, xi) >= rate && MeetsConstraints(m, rate, xi, headroom)) {
        e.batch = m;
        e.feasible = true;
        break;
      }
    }
    if (!e.feasible) e.batch = MaxStableBatch(rate, xi, headroom).value_or(1);
    table.push_back(e);
  }
  return table;
}

}  // namespace spotflow::bounds
