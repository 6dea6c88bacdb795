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

#ifndef SPOTFLOW_CORE_EVENT_H_
#define SPOTFLOW_CORE_EVENT_H_

#include <any>
#include <cstdint>
#include <string>
#include <vector>

#include "spotflow/core/time.h"

namespace spotflow {

using EventId = uint64_t;

// Dense task handle assigned by whoever builds the topology.
enum class TaskId : uint32_t {};

constexpr uint32_t Index(TaskId id) { return static_cast<uint32_t>(id); }

// Provenance header. `source_id` and `source_arrival` are stamped once by the
// source task and never change; the two sums only grow along the pipeline.
struct EventHeader {
  EventId source_id = 0;
  Timestamp source_arrival{};
  Duration sum_exec{0};
  Duration sum_queue{0};
  bool avoid_drop = false;
  bool probe = false;

  // Events exempt from every drop point.
  bool Undroppable() const { return avoid_drop || probe; }
};

// One task an event passed through, and the size of the batch it ran in.
struct Hop {
  TaskId task{};
  int batch_size = 0;
};

// Key-value event. The payload is opaque to the runtime; only the header,
// the key and the trail are inspected.
struct Event {
  EventHeader header;
  std::string key;
  std::any payload;
  std::vector<Hop> trail;
};

}  // namespace spotflow

#endif  // SPOTFLOW_CORE_EVENT_H_
