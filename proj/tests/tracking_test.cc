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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "spotflow/core/errors.h"
#include "spotflow/core/rng.h"
#include "spotflow/tracking/graph_gen.h"
#include "spotflow/tracking/road_network.h"
#include "spotflow/tracking/spotlight.h"
#include "spotflow/tracking/tracker.h"

namespace spotflow::tracking {
namespace {

// One camera per vertex, camera i on vertex i.
CameraPlacement Identity(const RoadNetwork& net) {
  std::vector<VertexId> v(net.vertex_count());
  for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<VertexId>(i);
  return CameraPlacement(v, net.vertex_count());
}

RoadNetwork Path() {
  RoadNetwork net(3);
  net.AddRoad(0, 1, 10);
  net.AddRoad(1, 2, 10);
  return net;
}

RoadNetwork Star() {
  RoadNetwork net(4);
  net.AddRoad(0, 1, 10);
  net.AddRoad(0, 2, 200);
  net.AddRoad(0, 3, 300);
  return net;
}

TEST(SpotlightRadius, Examples) {
  EXPECT_DOUBLE_EQ(SpotlightRadius(AtMillis(5000), AtMillis(5000), 4), 0);
  EXPECT_DOUBLE_EQ(SpotlightRadius(AtMillis(0), AtMillis(10'000), 4), 40);
  EXPECT_DOUBLE_EQ(SpotlightRadius(AtMillis(0), AtMillis(84'500), 1), 84.5);
  EXPECT_DOUBLE_EQ(SpotlightRadius(AtMillis(10), AtMillis(0), 4), 0);
}

TEST(WeightedBfs, RadiusZeroIsOrigin) {
  RoadNetwork net = Path();
  EXPECT_EQ(WeightedBfs(net, 1, 0, Identity(net)), std::vector<CameraId>({1}));
}

TEST(WeightedBfs, PathCutoff) {
  RoadNetwork net = Path();
  EXPECT_EQ(WeightedBfs(net, 0, 12, Identity(net)),
            std::vector<CameraId>({0, 1}));
  EXPECT_EQ(WeightedBfs(net, 0, 20, Identity(net)),
            std::vector<CameraId>({0, 1, 2}));
}

TEST(WeightedBfs, LargeRadiusCoversAll) {
  RoadNetwork net = Star();
  EXPECT_EQ(WeightedBfs(net, 0, net.TotalLength(), Identity(net)).size(), 4u);
}

TEST(WeightedBfs, UnknownVertexThrows) {
  RoadNetwork net = Path();
  EXPECT_THROW(WeightedBfs(net, 17, 5, Identity(net)), StateError);
}

TEST(UnweightedBfs, HopLimitZeroIsOrigin) {
  RoadNetwork net = Star();
  EXPECT_EQ(UnweightedBfs(net, 0, 84, 84.5, Identity(net)),
            std::vector<CameraId>({0}));
}

TEST(UnweightedBfs, StarActivatesAllLeaves) {
  RoadNetwork net = Star();
  auto p = Identity(net);
  auto bfs = UnweightedBfs(net, 0, 90, 84.5, p);
  auto wbfs = WeightedBfs(net, 0, 90, p);
  EXPECT_EQ(bfs.size() - 1, 3u);
  EXPECT_EQ(wbfs.size() - 1, 1u);
}

TEST(UnweightedBfs, MatchesWeightedOnUniformLengths) {
  RoadNetwork net(5);
  net.AddRoad(0, 1, 84.5);
  net.AddRoad(1, 2, 84.5);
  net.AddRoad(2, 3, 84.5);
  net.AddRoad(0, 4, 84.5);
  auto p = Identity(net);
  for (double r : {0.0, 50.0, 84.5, 100.0, 169.0, 200.0, 400.0}) {
    EXPECT_EQ(UnweightedBfs(net, 0, r, 84.5, p), WeightedBfs(net, 0, r, p)) << r;
  }
}

TEST(UnweightedBfs, SupersetWhenFixedLengthUnderestimates) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    RoadNetwork net(20);
    for (VertexId v = 1; v < 20; ++v) {
      net.AddRoad(v, static_cast<VertexId>(rng.Below(v)), rng.Uniform(50, 150));
    }
    for (int extra = 0; extra < 10; ++extra) {
      VertexId a = static_cast<VertexId>(rng.Below(20));
      VertexId b = static_cast<VertexId>(rng.Below(20));
      if (a != b) net.AddRoad(a, b, rng.Uniform(50, 150));
    }
    auto p = Identity(net);
    for (double r = 0; r < 600; r += 37) {
      auto w = WeightedBfs(net, 0, r, p);
      auto b = UnweightedBfs(net, 0, r, 50, p);
      EXPECT_TRUE(std::includes(b.begin(), b.end(), w.begin(), w.end()))
          << "seed " << seed << " r " << r;
    }
  }
}

TEST(RoadNetwork, RejectsBadRoads) {
  RoadNetwork net(2);
  EXPECT_THROW(net.AddRoad(0, 0, 1), ConfigError);
  EXPECT_THROW(net.AddRoad(0, 1, 0), ConfigError);
  EXPECT_THROW(net.AddRoad(0, 5, 1), ConfigError);
  EXPECT_THROW(net.Neighbors(9), StateError);
}

TEST(RoadNetwork, RepeatedPairKeepsShorter) {
  RoadNetwork net(2);
  net.AddRoad(0, 1, 30);
  net.AddRoad(1, 0, 20);
  EXPECT_EQ(net.road_count(), 1u);
  EXPECT_DOUBLE_EQ(net.Neighbors(0).at(0).length, 20);
  EXPECT_DOUBLE_EQ(net.MeanRoadLength(), 20);
}

TEST(RoadNetwork, FileRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / "spotflow_tracking_test";
  std::filesystem::create_directories(dir);
  RoadNetwork net = Star();
  SaveRoadNetwork(net, (dir / "g.txt").string());
  RoadNetwork back = LoadRoadNetwork((dir / "g.txt").string());
  EXPECT_EQ(back.vertex_count(), 4u);
  EXPECT_EQ(back.road_count(), 3u);
  EXPECT_DOUBLE_EQ(back.TotalLength(), 510);

  std::ofstream(dir / "p.txt") << "# camera vertex\n0 3\n1 0\n\n";
  CameraPlacement p = LoadPlacement((dir / "p.txt").string(), back);
  EXPECT_EQ(p.VertexOf(0), 3u);
  EXPECT_EQ(p.CamerasAt(0), std::vector<CameraId>({1}));

  std::ofstream(dir / "bad.txt") << "0 1 abc\n";
  EXPECT_THROW(LoadRoadNetwork((dir / "bad.txt").string()), ConfigError);
  EXPECT_THROW(LoadRoadNetwork((dir / "missing.txt").string()), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Placement, AroundVertexByRoadDistance) {
  RoadNetwork net = Star();
  CameraPlacement p = PlaceAroundVertex(net, 0, 3);
  EXPECT_EQ(p.VertexOf(0), 0u);
  EXPECT_EQ(p.VertexOf(1), 1u);
  EXPECT_EQ(p.VertexOf(2), 2u);
}

TEST(GraphGen, MatchesRequestedShape) {
  RoadGenOptions opt;
  opt.vertices = 200;
  opt.directed_edges = 560;
  opt.seed = 3;
  GeneratedRoads g = GenerateRoads(opt);
  EXPECT_EQ(g.net.vertex_count(), 200u);
  EXPECT_EQ(2 * g.net.road_count() - g.one_way.size(), 560u);
  EXPECT_NEAR(g.net.MeanRoadLength(), 84.5, 1e-6);
  // Connected: every vertex reachable from 0.
  auto d = DistancesWithin(g.net, 0, g.net.TotalLength());
  for (double x : d) EXPECT_TRUE(std::isfinite(x));
}

TEST(GraphGen, Deterministic) {
  RoadGenOptions opt;
  opt.vertices = 100;
  opt.directed_edges = 280;
  GeneratedRoads a = GenerateRoads(opt);
  GeneratedRoads b = GenerateRoads(opt);
  ASSERT_EQ(a.net.vertex_count(), b.net.vertex_count());
  for (VertexId v = 0; v < a.net.vertex_count(); ++v) {
    ASSERT_EQ(a.net.Neighbors(v).size(), b.net.Neighbors(v).size());
    for (size_t i = 0; i < a.net.Neighbors(v).size(); ++i) {
      EXPECT_EQ(a.net.Neighbors(v)[i].to, b.net.Neighbors(v)[i].to);
      EXPECT_EQ(a.net.Neighbors(v)[i].length, b.net.Neighbors(v)[i].length);
    }
  }
}

class TrackerTest : public ::testing::Test {
 protected:
  RoadNetwork net_ = Path();
  CameraPlacement placement_ = Identity(net_);
};

TEST_F(TrackerTest, InitShrinksToStart) {
  Tracker t(net_, placement_, {TlKind::kWbfs, 1.0, 10, 0});
  auto cmds = t.Init(AtMillis(0));
  EXPECT_EQ(t.state().active_count, 1u);
  EXPECT_TRUE(t.state().active[0]);
  EXPECT_EQ(cmds.size(), 2u);
  for (const auto& c : cmds) EXPECT_FALSE(c.activate);
}

TEST_F(TrackerTest, PositiveCollapsesToDetectingCamera) {
  Tracker t(net_, placement_, {TlKind::kWbfs, 1.0, 10, 0});
  t.Init(AtMillis(0));
  std::vector<Detection> neg = {{0, AtMillis(30'000), false}};
  t.ProcessDetections(neg, AtMillis(30'000));
  EXPECT_EQ(t.state().active_count, 3u);
  std::vector<Detection> pos = {{2, AtMillis(31'000), true}};
  auto cmds = t.ProcessDetections(pos, AtMillis(31'500));
  EXPECT_TRUE(t.reacquired());
  EXPECT_EQ(t.state().active_count, 1u);
  EXPECT_TRUE(t.state().active[2]);
  EXPECT_EQ(t.state().last_seen_location, 2u);
  EXPECT_EQ(t.state().last_seen_time, AtMillis(31'000));
  EXPECT_EQ(cmds.size(), 2u);
}

TEST_F(TrackerTest, NegativesGrowMonotonically) {
  Tracker t(net_, placement_, {TlKind::kWbfs, 1.0, 10, 0});
  t.Init(AtMillis(0));
  size_t last = t.state().active_count;
  for (int s = 1; s <= 30; ++s) {
    std::vector<Detection> neg = {{0, AtMillis(s * 1000), false}};
    t.ProcessDetections(neg, AtMillis(s * 1000));
    EXPECT_GE(t.state().active_count, last);
    last = t.state().active_count;
  }
  EXPECT_EQ(last, 3u);
}

TEST_F(TrackerTest, SimultaneousPositivesLatestThenSmallestId) {
  Tracker t(net_, placement_, {TlKind::kWbfs, 1.0, 10, 0});
  t.Init(AtMillis(0));
  std::vector<Detection> pos = {{2, AtMillis(5000), true},
                                {1, AtMillis(5000), true},
                                {0, AtMillis(4000), true}};
  t.ProcessDetections(pos, AtMillis(6000));
  EXPECT_EQ(t.state().last_seen_location, 1u);
}

TEST_F(TrackerTest, StalePositiveIgnored) {
  Tracker t(net_, placement_, {TlKind::kWbfs, 1.0, 10, 0});
  t.Init(AtMillis(0));
  std::vector<Detection> fresh = {{2, AtMillis(9000), true}};
  t.ProcessDetections(fresh, AtMillis(9000));
  std::vector<Detection> stale = {{0, AtMillis(8000), true}};
  t.ProcessDetections(stale, AtMillis(9100));
  EXPECT_FALSE(t.reacquired());
  EXPECT_EQ(t.state().last_seen_location, 2u);
}

TEST_F(TrackerTest, BaseKeepsEverything) {
  Tracker t(net_, placement_, {TlKind::kBase, 1.0, 10, 0});
  EXPECT_TRUE(t.Init(AtMillis(0)).empty());
  std::vector<Detection> pos = {{1, AtMillis(1000), true}};
  EXPECT_TRUE(t.ProcessDetections(pos, AtMillis(1000)).empty());
  EXPECT_EQ(t.state().active_count, 3u);
}

TEST(TlKind, Parse) {
  EXPECT_EQ(ParseTlKind("wbfs"), TlKind::kWbfs);
  EXPECT_EQ(ParseTlKind("bfs"), TlKind::kBfs);
  EXPECT_EQ(ParseTlKind("base"), TlKind::kBase);
  EXPECT_THROW(ParseTlKind("dfs"), ConfigError);
}

}  // namespace
}  // namespace spotflow::tracking
