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

#ifndef SPOTFLOW_ANALYTICS_MODULES_H_
#define SPOTFLOW_ANALYTICS_MODULES_H_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "spotflow/analytics/records.h"
#include "spotflow/budget/signals.h"
#include "spotflow/core/event.h"

namespace spotflow::analytics {

// Filter-control state of one camera. Cameras start active.
struct FcState {
  bool active = true;
};

// Forward the frame iff the camera is active.
bool FcLogic(const FrameRecord& frame, const FcState& state);

// Deterministic draw in [0, 1) for one event at one task.
double DetectorDraw(uint64_t seed, EventId event, TaskId task);

// Outcome of a detector for a frame with the given ground truth.
bool DetectorOutcome(bool truth, double draw, const DetectorProfile& profile);

// VA: one candidate per frame payload. The candidate flag comes from the
// detector profile. Events without a FrameRecord payload pass unchanged.
void VaLogic(std::vector<Event>& batch, TaskId task,
             const DetectorProfile& profile);

// CR: one detection per candidate payload, drawn against ground truth.
void CrLogic(std::vector<Event>& batch, TaskId task,
             const DetectorProfile& profile);

// Query fusion hook. The default does nothing.
class QueryFusion {
 public:
  virtual ~QueryFusion() = default;
  virtual void OnDetections(std::span<const DetectionRecord> detections);
};

enum class SinkStatus { kDelivered, kDelayed, kDropped };

struct SinkConfig {
  Duration gamma{15'000};
  Duration epsilon_max{1'000};
  bool drops_enabled = true;
};

struct SinkVerdict {
  SinkStatus status = SinkStatus::kDelivered;
  Duration latency{0};
  // Reject owed to the event's trail when the sink dropped it.
  std::optional<budget::RejectSignal> reject;
};

struct SinkOutcome {
  std::vector<SinkVerdict> verdicts;  // parallel to the input group
  std::optional<budget::AcceptSignal> accept;
  size_t accept_index = 0;  // member the accept refers to
};

// UV sink over one arriving group at sink time `now` (sink clock = source
// clock). With drops enabled, events later than gamma are dropped unless
// they carry avoid_drop; late probes are discarded without a reject.
// Everything kept is delivered (latency <= gamma) or delayed, and the
// slowest kept event may earn an accept.
SinkOutcome UvSink(std::span<const Event> group, Timestamp now,
                   const SinkConfig& config);

}  // namespace spotflow::analytics

#endif  // SPOTFLOW_ANALYTICS_MODULES_H_
