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

#include "spotflow/tracking/spotlight.h"

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <queue>

#include "spotflow/core/errors.h"

namespace spotflow::tracking {
namespace {

// Relative slack so that sums of equal lengths landing exactly on the radius
// are kept.
double Cutoff(double radius) { return radius + 1e-9 * std::max(1.0, radius); }

std::vector<CameraId> CamerasOn(const std::vector<VertexId>& vertices,
                                const CameraPlacement& placement) {
  std::vector<CameraId> out;
  for (VertexId v : vertices) {
    const auto& here = placement.CamerasAt(v);
    out.insert(out.end(), here.begin(), here.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double SpotlightRadius(Timestamp lst, Timestamp now, double peak_speed) {
  if (now <= lst) return 0.0;
  return peak_speed * static_cast<double>(Millis(now - lst)) / 1000.0;
}

std::vector<double> DistancesWithin(const RoadNetwork& net, VertexId origin,
                                    double radius) {
  if (!net.Has(origin)) {
    throw StateError("unknown vertex " + std::to_string(origin));
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double cutoff = Cutoff(radius);
  std::vector<double> dist(net.vertex_count(), inf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  dist[origin] = 0;
  frontier.push({0, origin});
  while (!frontier.empty()) {
    auto [d, v] = frontier.top();
    frontier.pop();
    if (d > dist[v]) continue;
    for (const Road& r : net.Neighbors(v)) {
      double nd = d + r.length;
      if (nd <= cutoff && nd < dist[r.to]) {
        dist[r.to] = nd;
        frontier.push({nd, r.to});
      }
    }
  }
  return dist;
}

std::vector<CameraId> WeightedBfs(const RoadNetwork& net, VertexId origin,
                                  double radius,
                                  const CameraPlacement& placement) {
  std::vector<double> dist = DistancesWithin(net, origin, radius);
  std::vector<VertexId> reached;
  for (VertexId v = 0; v < dist.size(); ++v) {
    if (std::isfinite(dist[v])) reached.push_back(v);
  }
  return CamerasOn(reached, placement);
}

std::vector<CameraId> UnweightedBfs(const RoadNetwork& net, VertexId origin,
                                    double radius, double fixed_len,
                                    const CameraPlacement& placement) {
  if (!net.Has(origin)) {
    throw StateError("unknown vertex " + std::to_string(origin));
  }
  if (!(fixed_len > 0)) throw ConfigError("fixed road length must be > 0");
  const auto max_hops =
      static_cast<int64_t>(std::floor(Cutoff(radius) / fixed_len));
  std::vector<int64_t> hops(net.vertex_count(), -1);
  std::deque<VertexId> frontier{origin};
  hops[origin] = 0;
  std::vector<VertexId> reached{origin};
  while (!frontier.empty()) {
    VertexId v = frontier.front();
    frontier.pop_front();
    if (hops[v] == max_hops) continue;
    for (const Road& r : net.Neighbors(v)) {
      if (hops[r.to] >= 0) continue;
      hops[r.to] = hops[v] + 1;
      reached.push_back(r.to);
      frontier.push_back(r.to);
    }
  }
  return CamerasOn(reached, placement);
}

}  // namespace spotflow::tracking
