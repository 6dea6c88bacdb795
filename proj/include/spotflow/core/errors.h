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

#ifndef SPOTFLOW_CORE_ERRORS_H_
#define SPOTFLOW_CORE_ERRORS_H_

#include <stdexcept>

namespace spotflow {

// Invalid or inconsistent configuration (files, parameters, topology).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An event was routed to a task that is not a known downstream.
class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation referenced state that does not exist (e.g. unknown vertex).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spotflow

#endif  // SPOTFLOW_CORE_ERRORS_H_
