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

#ifndef SPOTFLOW_ENGINE_PARTITIONER_H_
#define SPOTFLOW_ENGINE_PARTITIONER_H_

#include <cstdint>
#include <span>
#include <string_view>

#include "spotflow/core/event.h"

namespace spotflow::engine {

// 64-bit FNV-1a; stable across platforms and runs.
uint64_t StableHash(std::string_view key);

// Key-hash routing. Throws ConfigError when `downstream` is empty.
TaskId Partition(std::string_view key, std::span<const TaskId> downstream);

}  // namespace spotflow::engine

#endif  // SPOTFLOW_ENGINE_PARTITIONER_H_
