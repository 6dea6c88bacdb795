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

#ifndef SPOTFLOW_SIM_LINKS_H_
#define SPOTFLOW_SIM_LINKS_H_

#include <string>
#include <vector>

#include "spotflow/core/time.h"

namespace spotflow::sim {

// Local: same site, free. Inter: between compute sites. Head: to or from the
// head site that hosts the sink and tracking logic.
enum class LinkClass { kLocal, kInter, kHead };

struct LinkParams {
  double latency_ms = 0.5;
  double bandwidth_bps = 1e9;  // bits per second
};

struct LinkChange {
  Timestamp at{};
  std::string link;  // inter, head or all
  LinkParams params;
};

// Parses a bandwidth like "30Mbps", "1Gbps", "500kbps" or a plain number of
// bits per second. Throws ConfigError.
double ParseBandwidth(const std::string& text);

// Per-class link parameters with step changes over virtual time.
class LinkModel {
 public:
  LinkModel() = default;
  explicit LinkModel(LinkParams defaults);

  // Throws ConfigError for an unknown link name.
  void AddChange(const LinkChange& change);

  LinkParams ParamsAt(LinkClass cls, Timestamp t) const;

  // latency + bytes / bandwidth for a transfer starting at `t`, rounded up to
  // whole milliseconds. Local transfers take no time.
  Duration TransferTime(LinkClass cls, uint64_t bytes, Timestamp t) const;

 private:
  LinkParams inter_;
  LinkParams head_;
  std::vector<LinkChange> changes_;  // sorted by time, stable
};

}  // namespace spotflow::sim

#endif  // SPOTFLOW_SIM_LINKS_H_
