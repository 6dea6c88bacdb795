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

#ifndef SPOTFLOW_TRACKING_GRAPH_GEN_H_
#define SPOTFLOW_TRACKING_GRAPH_GEN_H_

#include <cstdint>

#include "spotflow/tracking/road_network.h"

namespace spotflow::tracking {

struct RoadGenOptions {
  size_t vertices = 1000;
  // Directed edge records, as in a one-way aware street export: two-way
  // roads count twice.
  size_t directed_edges = 2817;
  double mean_length = 84.5;
  uint64_t seed = 1;
  // Dense neighbourhoods and the relative density between them.
  size_t clusters = 8;
  double background = 0.15;
  // Radius (fraction of the region) of a sparse centre without clusters.
  double core_radius = 0.15;
};

struct GeneratedRoads {
  RoadNetwork net;
  // Road pairs that are listed once (one-way) in the directed export.
  std::vector<std::pair<VertexId, VertexId>> one_way;
};

// Planar street-like graph: clustered points in a disk, joined by the
// shortest non-crossing neighbour links, then thinned at random to the target
// road count while staying connected. Lengths are rescaled so the mean is
// `mean_length`.
GeneratedRoads GenerateRoads(const RoadGenOptions& options);

// Writes one line per directed edge.
void SaveDirectedEdges(const GeneratedRoads& roads, const std::string& path);

}  // namespace spotflow::tracking

#endif  // SPOTFLOW_TRACKING_GRAPH_GEN_H_
