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

#include "spotflow/engine/partitioner.h"

#include "spotflow/core/errors.h"

namespace spotflow::engine {

uint64_t StableHash(std::string_view key) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

TaskId Partition(std::string_view key, std::span<const TaskId> downstream) {
  if (downstream.empty()) {
    throw ConfigError("cannot partition: task has no downstream");
  }
  return downstream[StableHash(key) % downstream.size()];
}

}  // namespace spotflow::engine
