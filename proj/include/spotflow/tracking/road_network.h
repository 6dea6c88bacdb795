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

#ifndef SPOTFLOW_TRACKING_ROAD_NETWORK_H_
#define SPOTFLOW_TRACKING_ROAD_NETWORK_H_

#include <cstdint>
#include <string>
#include <vector>

namespace spotflow::tracking {

using VertexId = uint32_t;
using CameraId = uint32_t;

struct Road {
  VertexId to = 0;
  double length = 0;  // metres
};

// Undirected road graph with positive edge lengths. Vertex ids are dense.
class RoadNetwork {
 public:
  RoadNetwork() = default;
  explicit RoadNetwork(size_t vertices) : adjacency_(vertices) {}

  VertexId AddVertex();
  // Throws ConfigError on self loops, non-positive lengths or unknown ids.
  // A repeated pair keeps the shorter length.
  void AddRoad(VertexId a, VertexId b, double length);

  bool Has(VertexId v) const { return v < adjacency_.size(); }
  // Throws StateError for an unknown vertex.
  const std::vector<Road>& Neighbors(VertexId v) const;

  size_t vertex_count() const { return adjacency_.size(); }
  size_t road_count() const { return roads_; }
  double MeanRoadLength() const;
  double TotalLength() const { return total_length_; }

  // Copy with every road set to `length`.
  RoadNetwork WithUniformLength(double length) const;

 private:
  std::vector<std::vector<Road>> adjacency_;
  size_t roads_ = 0;
  double total_length_ = 0;
};

// Which vertex every camera watches.
class CameraPlacement {
 public:
  CameraPlacement() = default;
  CameraPlacement(std::vector<VertexId> camera_vertex, size_t vertex_count);

  size_t camera_count() const { return camera_vertex_.size(); }
  VertexId VertexOf(CameraId c) const;
  // Cameras on vertex `v`, ascending.
  const std::vector<CameraId>& CamerasAt(VertexId v) const;

 private:
  std::vector<VertexId> camera_vertex_;
  std::vector<std::vector<CameraId>> by_vertex_;
};

// `count` cameras on the vertices closest to `start` by road distance, ties
// broken by vertex id. Camera i sits on the i-th closest vertex.
CameraPlacement PlaceAroundVertex(const RoadNetwork& net, VertexId start,
                                  size_t count);

// Text formats: `src dst length_m` and `camera_id vertex_id`, one per line.
// Blank lines and '#' comments are skipped. Throw ConfigError.
RoadNetwork LoadRoadNetwork(const std::string& path);
CameraPlacement LoadPlacement(const std::string& path, const RoadNetwork& net);
void SaveRoadNetwork(const RoadNetwork& net, const std::string& path);

}  // namespace spotflow::tracking

#endif  // SPOTFLOW_TRACKING_ROAD_NETWORK_H_
