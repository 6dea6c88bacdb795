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

#ifndef SPOTFLOW_METRICS_RECORDS_H_
#define SPOTFLOW_METRICS_RECORDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spotflow/core/time.h"

namespace spotflow::metrics {

// Per-event outcome. Statuses: delivered, delayed, in_flight or
// dropped@<task>@dp<N>.
struct EventRecord {
  uint64_t event_id = 0;
  uint32_t camera_id = 0;
  Timestamp t_source{};
  std::optional<Timestamp> t_sink;
  std::string status = "in_flight";
  std::vector<int> batch_sizes;
  std::string flags;  // '|' separated: probe, avoid_drop, positive

  bool Delivered() const { return status == "delivered"; }
  bool Delayed() const { return status == "delayed"; }
  bool Dropped() const { return status.starts_with("dropped@"); }
  bool InFlight() const { return status == "in_flight"; }
  bool Flagged() const;
  std::optional<Duration> Latency() const;
};

struct TimelineRow {
  int64_t t = 0;  // second index
  uint32_t active_cameras = 0;
  double mean_latency_ms = 0;  // over sink arrivals in this second
  uint64_t events_in = 0;
  uint64_t events_dropped = 0;
};

struct Summary {
  uint64_t generated = 0;
  uint64_t delivered = 0;
  uint64_t delayed = 0;
  uint64_t delayed_unflagged = 0;
  uint64_t dropped = 0;
  uint64_t in_flight = 0;
  // In flight at the end and already older than gamma.
  uint64_t overdue = 0;
  uint32_t peak_active_cameras = 0;
  double median_latency_ms = 0;
  double p99_latency_ms = 0;
  double max_latency_ms = 0;
};

// Counts and latency percentiles over sink arrivals (delivered + delayed).
// Events still in flight are overdue when `end - t_source > gamma`.
Summary Summarize(const std::vector<EventRecord>& events,
                  uint32_t peak_active_cameras, Timestamp end, Duration gamma);

// Nearest-rank percentile of an unsorted sample; 0 when empty.
double Percentile(std::vector<double> values, double p);

void WriteEventsCsv(const std::string& path,
                    const std::vector<EventRecord>& events);
void WriteTimelineCsv(const std::string& path,
                      const std::vector<TimelineRow>& rows);
// `extra` is merged into the top-level object (a JSON object dump).
void WriteSummaryJson(const std::string& path, const Summary& summary,
                      const std::string& extra_json = "{}");

}  // namespace spotflow::metrics

#endif  // SPOTFLOW_METRICS_RECORDS_H_
