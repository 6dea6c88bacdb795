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

#include "spotflow/sim/links.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "spotflow/core/errors.h"

namespace spotflow::sim {

double ParseBandwidth(const std::string& text) {
  size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad bandwidth '" + text + "'");
  }
  std::string unit = text.substr(pos);
  for (char& c : unit) c = static_cast<char>(std::tolower(c));
  double scale = 1;
  if (unit.empty() || unit == "bps") {
    scale = 1;
  } else if (unit == "kbps") {
    scale = 1e3;
  } else if (unit == "mbps") {
    scale = 1e6;
  } else if (unit == "gbps") {
    scale = 1e9;
  } else {
    throw ConfigError("bad bandwidth unit in '" + text + "'");
  }
  if (!(value > 0)) throw ConfigError("bandwidth must be positive: " + text);
  return value * scale;
}

LinkModel::LinkModel(LinkParams defaults) : inter_(defaults), head_(defaults) {}

void LinkModel::AddChange(const LinkChange& change) {
  if (change.link != "inter" && change.link != "head" && change.link != "all") {
    throw ConfigError("unknown link '" + change.link +
                      "' (expected inter, head or all)");
  }
  if (!(change.params.bandwidth_bps > 0) || change.params.latency_ms < 0) {
    throw ConfigError("invalid link parameters");
  }
  auto it = std::upper_bound(
      changes_.begin(), changes_.end(), change.at,
      [](Timestamp t, const LinkChange& c) { return t < c.at; });
  changes_.insert(it, change);
}

LinkParams LinkModel::ParamsAt(LinkClass cls, Timestamp t) const {
  LinkParams p = cls == LinkClass::kHead ? head_ : inter_;
  const char* name = cls == LinkClass::kHead ? "head" : "inter";
  for (const LinkChange& c : changes_) {
    if (c.at > t) break;
    if (c.link == "all" || c.link == name) p = c.params;
  }
  return p;
}

Duration LinkModel::TransferTime(LinkClass cls, uint64_t bytes,
                                 Timestamp t) const {
  if (cls == LinkClass::kLocal) return Duration(0);
  const LinkParams p = ParamsAt(cls, t);
  const double us =
      p.latency_ms * 1000.0 + static_cast<double>(bytes) * 8.0 * 1e6 /
                                  p.bandwidth_bps;
  return Duration(static_cast<int64_t>(std::ceil(us / 1000.0 - 1e-9)));
}

}  // namespace spotflow::sim
