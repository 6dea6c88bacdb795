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

#ifndef SPOTFLOW_CORE_TIME_H_
#define SPOTFLOW_CORE_TIME_H_

#include <chrono>
#include <cstdint>
#include <string>

namespace spotflow {

// All durations and timestamps are integer milliseconds of virtual time.
using Duration = std::chrono::milliseconds;

struct VirtualClock {
  using duration = Duration;
  using rep = duration::rep;
  using period = duration::period;
  using time_point = std::chrono::time_point<VirtualClock, duration>;
  static constexpr bool is_steady = true;
};

using Timestamp = VirtualClock::time_point;

constexpr Timestamp AtMillis(int64_t ms) { return Timestamp(Duration(ms)); }
constexpr int64_t Millis(Duration d) { return d.count(); }
constexpr int64_t Millis(Timestamp t) { return t.time_since_epoch().count(); }

// A device clock: the reference timeline shifted by a constant skew.
class ClockDomain {
 public:
  ClockDomain() = default;
  ClockDomain(std::string device_id, Duration skew)
      : device_id_(std::move(device_id)), skew_(skew) {}

  const std::string& device_id() const { return device_id_; }
  Duration skew() const { return skew_; }

  Timestamp Read(Timestamp reference) const { return reference + skew_; }
  Timestamp ToReference(Timestamp local) const { return local - skew_; }

 private:
  std::string device_id_;
  Duration skew_{0};
};

// Upstream time of an event observed at `arrival` on a device whose clock is
// `skew` ahead of the source clock. Negative results mean the skew is
// misconfigured; callers decide whether to log.
constexpr Duration SkewCorrectedUpstreamTime(Timestamp arrival,
                                             Timestamp source_arrival,
                                             Duration skew) {
  return (arrival - skew) - source_arrival;
}

}  // namespace spotflow

#endif  // SPOTFLOW_CORE_TIME_H_
