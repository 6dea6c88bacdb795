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

#include <any>
#include <vector>

#include <gtest/gtest.h>

#include "spotflow/analytics/modules.h"
#include "spotflow/core/errors.h"

namespace spotflow::analytics {
namespace {

constexpr TaskId kVa{4};
constexpr TaskId kCr{5};

Event FrameEvent(EventId id, bool truth) {
  Event e;
  e.header.source_id = id;
  e.key = "3";
  e.payload = FrameRecord{3, AtMillis(1000 * static_cast<int64_t>(id)), truth};
  return e;
}

TEST(Fc, ForwardsOnlyWhenActive) {
  FrameRecord f;
  EXPECT_TRUE(FcLogic(f, FcState{true}));
  EXPECT_FALSE(FcLogic(f, FcState{false}));
  FcState s;
  EXPECT_TRUE(s.active);
  s.active = false;
  EXPECT_FALSE(FcLogic(f, s));
}

TEST(Va, OneCandidatePerFrame) {
  std::vector<Event> batch;
  for (EventId i = 1; i <= 5; ++i) batch.push_back(FrameEvent(i, i == 2));
  DetectorProfile oracle;
  VaLogic(batch, kVa, oracle);
  ASSERT_EQ(batch.size(), 5u);
  for (size_t i = 0; i < batch.size(); ++i) {
    const auto* c = std::any_cast<CandidateRecord>(&batch[i].payload);
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->candidate, i == 1);
    EXPECT_EQ(batch[i].header.source_id, i + 1);
  }
}

TEST(Va, EmptyBatch) {
  std::vector<Event> batch;
  VaLogic(batch, kVa, DetectorProfile{});
  EXPECT_TRUE(batch.empty());
}

TEST(Va, CostModelAtFullBatch) {
  auto cost = ExecTimeModel::Affine(Duration(54), Duration(67), 25);
  EXPECT_EQ(cost.Eval(25), Duration(1729));
}

TEST(Cr, OracleDetectorReportsTruth) {
  std::vector<Event> batch = {FrameEvent(1, true), FrameEvent(2, false)};
  DetectorProfile oracle;
  VaLogic(batch, kVa, oracle);
  CrLogic(batch, kCr, oracle);
  const auto& pos = std::any_cast<const DetectionRecord&>(batch[0].payload);
  const auto& neg = std::any_cast<const DetectionRecord&>(batch[1].payload);
  EXPECT_TRUE(pos.matched);
  EXPECT_FALSE(neg.matched);
  EXPECT_EQ(pos.camera, 3u);
  EXPECT_EQ(pos.frame_ts, AtMillis(1000));
}

TEST(Cr, DeterministicReplay) {
  DetectorProfile noisy;
  noisy.true_positive_rate = 0.5;
  noisy.false_positive_rate = 0.5;
  noisy.seed = 11;
  std::vector<bool> first;
  for (int run = 0; run < 2; ++run) {
    std::vector<Event> batch;
    for (EventId i = 1; i <= 40; ++i) batch.push_back(FrameEvent(i, i % 2));
    VaLogic(batch, kVa, DetectorProfile{});
    CrLogic(batch, kCr, noisy);
    for (size_t i = 0; i < batch.size(); ++i) {
      bool m = std::any_cast<const DetectionRecord&>(batch[i].payload).matched;
      if (run == 0) {
        first.push_back(m);
      } else {
        EXPECT_EQ(m, first[i]);
      }
    }
  }
  int hits = 0;
  for (bool b : first) hits += b;
  EXPECT_GT(hits, 5);
  EXPECT_LT(hits, 35);
}

TEST(DetectorProfile, ValidatesRates) {
  DetectorProfile p;
  p.true_positive_rate = 1.5;
  EXPECT_THROW(p.Validate(), ConfigError);
  p.true_positive_rate = 0.9;
  p.false_positive_rate = -0.1;
  EXPECT_THROW(p.Validate(), ConfigError);
}

class CountingFusion : public QueryFusion {
 public:
  void OnDetections(std::span<const DetectionRecord> d) override {
    seen += d.size();
  }
  size_t seen = 0;
};

TEST(QueryFusion, DefaultIsNoOpAndReplaceable) {
  std::vector<DetectionRecord> d(3);
  QueryFusion def;
  def.OnDetections(d);
  CountingFusion custom;
  QueryFusion& hook = custom;
  hook.OnDetections(d);
  EXPECT_EQ(custom.seen, 3u);
}

Event SinkEvent(EventId id, int64_t source_ms, bool avoid = false,
                bool probe = false) {
  Event e;
  e.header.source_id = id;
  e.header.source_arrival = AtMillis(source_ms);
  e.header.avoid_drop = avoid;
  e.header.probe = probe;
  return e;
}

TEST(UvSink, OnTimeDelivered) {
  std::vector<Event> g = {SinkEvent(1, 0)};
  SinkOutcome out = UvSink(g, AtMillis(9000), SinkConfig{});
  EXPECT_EQ(out.verdicts[0].status, SinkStatus::kDelivered);
  EXPECT_EQ(out.verdicts[0].latency, Duration(9000));
  ASSERT_TRUE(out.accept.has_value());
  EXPECT_EQ(out.accept->early_by, Duration(6000));
}

TEST(UvSink, LateDelayedWithoutDrops) {
  SinkConfig cfg;
  cfg.drops_enabled = false;
  std::vector<Event> g = {SinkEvent(1, 0)};
  SinkOutcome out = UvSink(g, AtMillis(16'800), cfg);
  EXPECT_EQ(out.verdicts[0].status, SinkStatus::kDelayed);
  EXPECT_FALSE(out.accept.has_value());
}

TEST(UvSink, LateDroppedWithRejectWhenDropsEnabled) {
  std::vector<Event> g = {SinkEvent(1, 0)};
  SinkOutcome out = UvSink(g, AtMillis(16'800), SinkConfig{});
  EXPECT_EQ(out.verdicts[0].status, SinkStatus::kDropped);
  ASSERT_TRUE(out.verdicts[0].reject.has_value());
  EXPECT_EQ(out.verdicts[0].reject->excess, Duration(1800));
}

TEST(UvSink, AvoidDropDeliveredLate) {
  std::vector<Event> g = {SinkEvent(1, 0, true)};
  SinkOutcome out = UvSink(g, AtMillis(16'800), SinkConfig{});
  EXPECT_EQ(out.verdicts[0].status, SinkStatus::kDelayed);
}

TEST(UvSink, LateProbeDiscardedWithoutSignal) {
  std::vector<Event> g = {SinkEvent(1, 0, false, true)};
  SinkOutcome out = UvSink(g, AtMillis(20'000), SinkConfig{});
  EXPECT_EQ(out.verdicts[0].status, SinkStatus::kDropped);
  EXPECT_FALSE(out.verdicts[0].reject.has_value());
  EXPECT_FALSE(out.accept.has_value());
}

TEST(UvSink, EarlyProbeEarnsAccept) {
  std::vector<Event> g = {SinkEvent(1, 0, false, true)};
  SinkOutcome out = UvSink(g, AtMillis(2000), SinkConfig{});
  EXPECT_EQ(out.verdicts[0].status, SinkStatus::kDelivered);
  EXPECT_TRUE(out.accept.has_value());
}

TEST(UvSink, AcceptRefersToSlowestMember) {
  std::vector<Event> g = {SinkEvent(1, 5000), SinkEvent(2, 1000),
                          SinkEvent(3, 3000)};
  SinkOutcome out = UvSink(g, AtMillis(8000), SinkConfig{});
  ASSERT_TRUE(out.accept.has_value());
  EXPECT_EQ(out.accept->event, 2u);
  EXPECT_EQ(out.accept_index, 1u);
  EXPECT_EQ(out.accept->early_by, Duration(8000));
}

}  // namespace
}  // namespace spotflow::analytics
