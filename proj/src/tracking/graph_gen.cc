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

#include "spotflow/tracking/graph_gen.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "spotflow/core/errors.h"
#include "spotflow/core/rng.h"

namespace spotflow::tracking {
namespace {

struct Point {
  double x, y;
};

struct Candidate {
  double length;
  VertexId a, b;
};

double Dist(const Point& p, const Point& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

double Cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Proper crossing of segments pq and rs; shared endpoints do not count.
bool Crosses(const Point& p, const Point& q, const Point& r, const Point& s) {
  double d1 = Cross(r, s, p), d2 = Cross(r, s, q);
  double d3 = Cross(p, q, r), d4 = Cross(p, q, s);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

struct DisjointSet {
  std::vector<VertexId> parent;
  explicit DisjointSet(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  VertexId Find(VertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool Union(VertexId a, VertexId b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

GeneratedRoads GenerateRoads(const RoadGenOptions& options) {
  const size_t n = options.vertices;
  if (n < 2) throw ConfigError("need at least two vertices");
  // Undirected roads U and one-way roads O satisfy 2U - O = directed edges.
  const size_t undirected = (options.directed_edges * 53 + 99) / 100;
  const size_t one_way = 2 * undirected - options.directed_edges;
  if (undirected < n - 1 || one_way > undirected) {
    throw ConfigError("edge count too small to connect the vertices");
  }
  Rng rng(options.seed);

  // Clustered points in a unit disk: dense neighbourhoods over a sparse
  // background, so road lengths vary as in a real street map.
  struct Cluster {
    Point c;
    double sigma;
  };
  std::vector<Cluster> clusters(options.clusters);
  for (Cluster& cl : clusters) {
    double r = options.core_radius +
               std::sqrt(rng.Uniform()) * (0.85 - options.core_radius);
    double a = rng.Uniform(0, 2 * M_PI);
    cl = {{r * std::cos(a), r * std::sin(a)}, rng.Uniform(0.08, 0.2)};
  }
  auto density = [&](const Point& p) {
    double d = options.background;
    if (std::hypot(p.x, p.y) < options.core_radius) return d;
    for (const Cluster& cl : clusters) {
      double q = Dist(p, cl.c) / cl.sigma;
      d += std::exp(-0.5 * q * q);
    }
    return d;
  };
  double peak = 0;
  for (int i = 0; i < 4096; ++i) {
    double r = std::sqrt(rng.Uniform());
    double a = rng.Uniform(0, 2 * M_PI);
    peak = std::max(peak, density({r * std::cos(a), r * std::sin(a)}));
  }
  for (const Cluster& cl : clusters) peak = std::max(peak, density(cl.c));
  const double min_sep = 0.25 / std::sqrt(static_cast<double>(n));
  std::vector<Point> pts;
  while (pts.size() < n) {
    double r = std::sqrt(rng.Uniform());
    double a = rng.Uniform(0, 2 * M_PI);
    Point p{r * std::cos(a), r * std::sin(a)};
    if (rng.Uniform() * peak > density(p)) continue;
    bool close = false;
    for (const Point& q : pts) {
      if (Dist(p, q) < min_sep) {
        close = true;
        break;
      }
    }
    if (!close) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return std::hypot(a.x, a.y) < std::hypot(b.x, b.y);
  });

  std::vector<Candidate> candidates;
  const size_t k = 8;
  for (VertexId a = 0; a < n; ++a) {
    std::vector<std::pair<double, VertexId>> near;
    for (VertexId b = 0; b < n; ++b) {
      if (a != b) near.push_back({Dist(pts[a], pts[b]), b});
    }
    std::partial_sort(near.begin(), near.begin() + static_cast<long>(k),
                      near.end());
    for (size_t i = 0; i < k; ++i) {
      if (a < near[i].second) {
        candidates.push_back({near[i].first, a, near[i].second});
      } else {
        candidates.push_back({near[i].first, near[i].second, a});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) {
              return std::tie(x.length, x.a, x.b) <
                     std::tie(y.length, y.a, y.b);
            });
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](const Candidate& x, const Candidate& y) {
                                 return x.a == y.a && x.b == y.b;
                               }),
                   candidates.end());

  std::vector<Candidate> chosen;
  auto crosses_any = [&](const Candidate& c) {
    for (const Candidate& e : chosen) {
      if (Crosses(pts[c.a], pts[c.b], pts[e.a], pts[e.b])) return true;
    }
    return false;
  };
  // Planar near-triangulation from the shortest non-crossing links.
  for (const Candidate& c : candidates) {
    if (!crosses_any(c)) chosen.push_back(c);
  }
  if (chosen.size() < undirected) {
    throw ConfigError("too few candidate roads; lower the edge count");
  }
  DisjointSet sets(n);
  for (const Candidate& c : chosen) sets.Union(c.a, c.b);
  for (VertexId v = 1; v < n; ++v) {
    if (sets.Find(v) != sets.Find(0)) {
      throw ConfigError("generated road graph is disconnected; try a "
                        "different seed");
    }
  }

  // Thin it at random to the target count. A road goes only if the graph
  // stays connected; dead ends are avoided while other roads remain.
  std::vector<std::vector<VertexId>> adj(n);
  for (const Candidate& c : chosen) {
    adj[c.a].push_back(c.b);
    adj[c.b].push_back(c.a);
  }
  auto unlink = [&](VertexId x, VertexId y) {
    adj[x].erase(std::find(adj[x].begin(), adj[x].end(), y));
  };
  std::vector<int> seen(n, -1);
  int stamp = 0;
  auto reachable = [&](VertexId from, VertexId to) {
    ++stamp;
    std::vector<VertexId> stack{from};
    seen[from] = stamp;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      if (v == to) return true;
      for (VertexId w : adj[v]) {
        if (seen[w] != stamp) {
          seen[w] = stamp;
          stack.push_back(w);
        }
      }
    }
    return false;
  };
  std::vector<bool> keep(chosen.size(), true);
  size_t remaining = chosen.size();
  for (size_t min_degree = 3; min_degree >= 2 && remaining > undirected;
       --min_degree) {
    std::vector<size_t> order(chosen.size());
    std::iota(order.begin(), order.end(), 0);
    for (size_t i = 0; i + 1 < order.size(); ++i) {
      std::swap(order[i], order[i + rng.Below(order.size() - i)]);
    }
    for (size_t i : order) {
      if (remaining == undirected) break;
      const Candidate& c = chosen[i];
      if (!keep[i] || adj[c.a].size() < min_degree ||
          adj[c.b].size() < min_degree) {
        continue;
      }
      unlink(c.a, c.b);
      unlink(c.b, c.a);
      if (reachable(c.a, c.b)) {
        keep[i] = false;
        --remaining;
      } else {
        adj[c.a].push_back(c.b);
        adj[c.b].push_back(c.a);
      }
    }
  }
  if (remaining != undirected) {
    throw ConfigError("cannot thin the road graph to the edge count");
  }
  std::vector<Candidate> kept;
  for (size_t i = 0; i < chosen.size(); ++i) {
    if (keep[i]) kept.push_back(chosen[i]);
  }
  chosen = std::move(kept);

  double total = 0;
  for (const Candidate& c : chosen) total += c.length;
  const double scale = options.mean_length * chosen.size() / total;

  GeneratedRoads out;
  out.net = RoadNetwork(n);
  for (const Candidate& c : chosen) out.net.AddRoad(c.a, c.b, c.length * scale);
  // A random subset of roads is listed in one direction only.
  std::vector<size_t> order(chosen.size());
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = 0; i < one_way && i < order.size(); ++i) {
    size_t j = i + rng.Below(order.size() - i);
    std::swap(order[i], order[j]);
    out.one_way.emplace_back(chosen[order[i]].a, chosen[order[i]].b);
  }
  std::sort(out.one_way.begin(), out.one_way.end());
  return out;
}

void SaveDirectedEdges(const GeneratedRoads& roads, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out.precision(3);
  out << std::fixed;
  const RoadNetwork& net = roads.net;
  for (VertexId v = 0; v < net.vertex_count(); ++v) {
    for (const Road& r : net.Neighbors(v)) {
      if (v > r.to) continue;
      out << v << ' ' << r.to << ' ' << r.length << '\n';
      if (!std::binary_search(roads.one_way.begin(), roads.one_way.end(),
                              std::make_pair(v, r.to))) {
        out << r.to << ' ' << v << ' ' << r.length << '\n';
      }
    }
  }
}

}  // namespace spotflow::tracking
