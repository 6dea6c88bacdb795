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

#include "spotflow/tracking/road_network.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include "spotflow/core/errors.h"

namespace spotflow::tracking {

VertexId RoadNetwork::AddVertex() {
  adjacency_.emplace_back();
  return static_cast<VertexId>(adjacency_.size() - 1);
}

void RoadNetwork::AddRoad(VertexId a, VertexId b, double length) {
  if (!Has(a) || !Has(b)) {
    throw ConfigError("road references unknown vertex " +
                      std::to_string(Has(a) ? b : a));
  }
  if (a == b) throw ConfigError("self loop at vertex " + std::to_string(a));
  if (!(length > 0)) {
    throw ConfigError("road " + std::to_string(a) + "-" + std::to_string(b) +
                      " has non-positive length");
  }
  for (Road& r : adjacency_[a]) {
    if (r.to != b) continue;
    if (length < r.length) {
      total_length_ += length - r.length;
      r.length = length;
      for (Road& back : adjacency_[b]) {
        if (back.to == a) back.length = length;
      }
    }
    return;
  }
  adjacency_[a].push_back({b, length});
  adjacency_[b].push_back({a, length});
  ++roads_;
  total_length_ += length;
}

const std::vector<Road>& RoadNetwork::Neighbors(VertexId v) const {
  if (!Has(v)) throw StateError("unknown vertex " + std::to_string(v));
  return adjacency_[v];
}

double RoadNetwork::MeanRoadLength() const {
  return roads_ == 0 ? 0.0 : total_length_ / static_cast<double>(roads_);
}

RoadNetwork RoadNetwork::WithUniformLength(double length) const {
  RoadNetwork out = *this;
  for (auto& roads : out.adjacency_) {
    for (Road& r : roads) r.length = length;
  }
  out.total_length_ = length * static_cast<double>(roads_);
  return out;
}

CameraPlacement::CameraPlacement(std::vector<VertexId> camera_vertex,
                                 size_t vertex_count)
    : camera_vertex_(std::move(camera_vertex)), by_vertex_(vertex_count) {
  for (CameraId c = 0; c < camera_vertex_.size(); ++c) {
    if (camera_vertex_[c] >= vertex_count) {
      throw ConfigError("camera " + std::to_string(c) +
                        " placed on unknown vertex " +
                        std::to_string(camera_vertex_[c]));
    }
    by_vertex_[camera_vertex_[c]].push_back(c);
  }
}

VertexId CameraPlacement::VertexOf(CameraId c) const {
  if (c >= camera_vertex_.size()) {
    throw StateError("unknown camera " + std::to_string(c));
  }
  return camera_vertex_[c];
}

const std::vector<CameraId>& CameraPlacement::CamerasAt(VertexId v) const {
  static const std::vector<CameraId> kNone;
  return v < by_vertex_.size() ? by_vertex_[v] : kNone;
}

CameraPlacement PlaceAroundVertex(const RoadNetwork& net, VertexId start,
                                  size_t count) {
  if (!net.Has(start)) {
    throw ConfigError("start vertex " + std::to_string(start) +
                      " not in road network");
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(net.vertex_count(), inf);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  dist[start] = 0;
  frontier.push({0, start});
  std::vector<VertexId> order;
  while (!frontier.empty() && order.size() < count) {
    auto [d, v] = frontier.top();
    frontier.pop();
    if (d > dist[v]) continue;
    order.push_back(v);
    for (const Road& r : net.Neighbors(v)) {
      if (d + r.length < dist[r.to]) {
        dist[r.to] = d + r.length;
        frontier.push({dist[r.to], r.to});
      }
    }
  }
  if (order.size() < count) {
    throw ConfigError("only " + std::to_string(order.size()) +
                      " vertices reachable from the start; cannot place " +
                      std::to_string(count) + " cameras");
  }
  return CameraPlacement(std::move(order), net.vertex_count());
}

namespace {

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

// Returns false for blank and comment lines.
bool Tokenize(std::string line, std::istringstream& out) {
  auto hash = line.find('#');
  if (hash != std::string::npos) line.resize(hash);
  if (line.find_first_not_of(" \t\r") == std::string::npos) return false;
  out.clear();
  out.str(line);
  return true;
}

}  // namespace

RoadNetwork LoadRoadNetwork(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  struct Row {
    uint64_t a, b;
    double len;
  };
  std::vector<Row> rows;
  uint64_t max_id = 0;
  std::string line;
  int lineno = 0;
  std::istringstream fields;
  while (std::getline(in, line)) {
    ++lineno;
    if (!Tokenize(line, fields)) continue;
    Row r{};
    if (!(fields >> r.a >> r.b >> r.len)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected `src dst length_m`");
    }
    max_id = std::max({max_id, r.a, r.b});
    rows.push_back(r);
  }
  if (rows.empty()) throw ConfigError(path + ": no roads");
  RoadNetwork net(max_id + 1);
  for (const Row& r : rows) {
    net.AddRoad(static_cast<VertexId>(r.a), static_cast<VertexId>(r.b),
                r.len);
  }
  return net;
}

CameraPlacement LoadPlacement(const std::string& path,
                              const RoadNetwork& net) {
  std::ifstream in = OpenOrThrow(path);
  std::vector<std::pair<uint64_t, uint64_t>> rows;
  std::string line;
  int lineno = 0;
  std::istringstream fields;
  while (std::getline(in, line)) {
    ++lineno;
    if (!Tokenize(line, fields)) continue;
    uint64_t cam = 0, v = 0;
    if (!(fields >> cam >> v)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected `camera_id vertex_id`");
    }
    rows.emplace_back(cam, v);
  }
  std::vector<VertexId> camera_vertex(rows.size(),
                                      std::numeric_limits<VertexId>::max());
  for (auto [cam, v] : rows) {
    if (cam >= rows.size()) {
      throw ConfigError(path + ": camera ids must be dense from 0");
    }
    camera_vertex[cam] = static_cast<VertexId>(v);
  }
  return CameraPlacement(std::move(camera_vertex), net.vertex_count());
}

void SaveRoadNetwork(const RoadNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out.precision(6);
  out << std::fixed;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    for (const Road& r : net.Neighbors(v)) {
      if (v < r.to) out << v << ' ' << r.to << ' ' << r.length << '\n';
    }
  }
}

}  // namespace spotflow::tracking
