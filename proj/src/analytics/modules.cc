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

#include "spotflow/analytics/modules.h"

#include <any>

#include "spotflow/budget/protocol.h"
#include "spotflow/core/errors.h"
#include "spotflow/core/rng.h"

namespace spotflow::analytics {

void DetectorProfile::Validate() const {
  auto in_range = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_range(true_positive_rate) || !in_range(false_positive_rate)) {
    throw ConfigError("detector rates must lie in [0, 1]");
  }
}

bool FcLogic(const FrameRecord&, const FcState& state) { return state.active; }

double DetectorDraw(uint64_t seed, EventId event, TaskId task) {
  return UnitInterval(MixKeys(MixKeys(seed, event), Index(task)));
}

bool DetectorOutcome(bool truth, double draw, const DetectorProfile& profile) {
  return truth ? draw < profile.true_positive_rate
               : draw < profile.false_positive_rate;
}

void VaLogic(std::vector<Event>& batch, TaskId task,
             const DetectorProfile& profile) {
  for (Event& e : batch) {
    const auto* frame = std::any_cast<FrameRecord>(&e.payload);
    if (frame == nullptr) continue;
    CandidateRecord out{*frame, false};
    out.candidate = DetectorOutcome(
        frame->contains_entity,
        DetectorDraw(profile.seed, e.header.source_id, task), profile);
    e.payload = out;
  }
}

void CrLogic(std::vector<Event>& batch, TaskId task,
             const DetectorProfile& profile) {
  for (Event& e : batch) {
    const auto* cand = std::any_cast<CandidateRecord>(&e.payload);
    if (cand == nullptr) continue;
    const double draw = DetectorDraw(profile.seed, e.header.source_id, task);
    DetectionRecord out;
    out.camera = cand->frame.camera;
    out.frame_ts = cand->frame.frame_ts;
    out.truth = cand->frame.contains_entity;
    out.matched = DetectorOutcome(out.truth, draw, profile);
    out.confidence = out.matched ? 1.0 - draw / 2 : draw / 2;
    e.payload = out;
  }
}

void QueryFusion::OnDetections(std::span<const DetectionRecord>) {}

SinkOutcome UvSink(std::span<const Event> group, Timestamp now,
                   const SinkConfig& config) {
  SinkOutcome out;
  out.verdicts.resize(group.size());
  std::vector<budget::SinkArrival> kept;
  std::vector<size_t> kept_index;
  for (size_t i = 0; i < group.size(); ++i) {
    const EventHeader& h = group[i].header;
    SinkVerdict& v = out.verdicts[i];
    v.latency = now - h.source_arrival;
    const bool late = v.latency > config.gamma;
    if (config.drops_enabled && late && !h.avoid_drop) {
      v.status = SinkStatus::kDropped;
      if (!h.probe) {
        v.reject = budget::RejectSignal{h.source_id, v.latency - config.gamma,
                                        h.sum_queue};
      }
      continue;
    }
    v.status = late ? SinkStatus::kDelayed : SinkStatus::kDelivered;
    kept.push_back({&h, v.latency});
    kept_index.push_back(i);
  }
  out.accept = budget::SinkEvaluate(kept, config.gamma, config.epsilon_max);
  if (out.accept) {
    for (size_t k = 0; k < kept.size(); ++k) {
      if (kept[k].header->source_id == out.accept->event) {
        out.accept_index = kept_index[k];
        break;
      }
    }
  }
  return out;
}

}  // namespace spotflow::analytics
