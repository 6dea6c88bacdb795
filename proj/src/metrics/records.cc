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

#include "spotflow/metrics/records.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "spotflow/core/errors.h"

namespace spotflow::metrics {
namespace {

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  return out;
}

}  // namespace

bool EventRecord::Flagged() const {
  return flags.find("probe") != std::string::npos ||
         flags.find("avoid_drop") != std::string::npos;
}

std::optional<Duration> EventRecord::Latency() const {
  if (!t_sink) return std::nullopt;
  return *t_sink - t_source;
}

double Percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  auto rank = static_cast<size_t>(std::ceil(p / 100.0 * values.size()));
  rank = std::clamp<size_t>(rank, 1, values.size());
  return values[rank - 1];
}

Summary Summarize(const std::vector<EventRecord>& events,
                  uint32_t peak_active_cameras, Timestamp end, Duration gamma) {
  Summary s;
  s.generated = events.size();
  s.peak_active_cameras = peak_active_cameras;
  std::vector<double> latencies;
  for (const EventRecord& e : events) {
    if (e.Delivered()) {
      ++s.delivered;
    } else if (e.Delayed()) {
      ++s.delayed;
      if (!e.Flagged()) ++s.delayed_unflagged;
    } else if (e.Dropped()) {
      ++s.dropped;
    } else {
      ++s.in_flight;
      if (end - e.t_source > gamma) ++s.overdue;
    }
    if ((e.Delivered() || e.Delayed()) && e.t_sink) {
      latencies.push_back(static_cast<double>(e.Latency()->count()));
    }
  }
  s.median_latency_ms = Percentile(latencies, 50);
  s.p99_latency_ms = Percentile(latencies, 99);
  s.max_latency_ms = Percentile(latencies, 100);
  return s;
}

void WriteEventsCsv(const std::string& path,
                    const std::vector<EventRecord>& events) {
  std::ofstream out = OpenForWrite(path);
  out << "event_id,camera_id,t_source,t_sink,status,batch_sizes,flags\n";
  for (const EventRecord& e : events) {
    out << e.event_id << ',' << e.camera_id << ',' << Millis(e.t_source)
        << ',';
    if (e.t_sink) out << Millis(*e.t_sink);
    out << ',' << e.status << ',';
    for (size_t i = 0; i < e.batch_sizes.size(); ++i) {
      if (i > 0) out << '|';
      out << e.batch_sizes[i];
    }
    out << ',' << e.flags << '\n';
  }
}

void WriteTimelineCsv(const std::string& path,
                      const std::vector<TimelineRow>& rows) {
  std::ofstream out = OpenForWrite(path);
  out << "t,active_cameras,mean_latency_ms,events_in,events_dropped\n";
  char buf[32];
  for (const TimelineRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.1f", r.mean_latency_ms);
    out << r.t << ',' << r.active_cameras << ',' << buf << ',' << r.events_in
        << ',' << r.events_dropped << '\n';
  }
}

void WriteSummaryJson(const std::string& path, const Summary& s,
                      const std::string& extra_json) {
  nlohmann::ordered_json j;
  j["delivered"] = s.delivered;
  j["delayed"] = s.delayed;
  j["dropped"] = s.dropped;
  j["peak_active_cameras"] = s.peak_active_cameras;
  j["median_latency_ms"] = s.median_latency_ms;
  j["p99_latency_ms"] = s.p99_latency_ms;
  j["generated"] = s.generated;
  j["in_flight"] = s.in_flight;
  j["overdue"] = s.overdue;
  j["delayed_unflagged"] = s.delayed_unflagged;
  j["max_latency_ms"] = s.max_latency_ms;
  const auto extra = nlohmann::ordered_json::parse(extra_json);
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = *it;
  std::ofstream out = OpenForWrite(path);
  out << j.dump(2) << '\n';
}

}  // namespace spotflow::metrics
