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

#include <vector>

#include <gtest/gtest.h>

#include "spotflow/budget/budget_state.h"
#include "spotflow/budget/protocol.h"
#include "spotflow/core/errors.h"

namespace spotflow::budget {
namespace {

constexpr TaskId kDest{3};

ExecTimeModel Xi(int m_max = 25) {
  return ExecTimeModel::Affine(Duration(100), Duration(50), m_max);
}

TEST(ReduceLambda, ProportionalShare) {
  // xi(11) - xi(1) = 500.
  EXPECT_EQ(ComputeReduceLambda(Duration(100), Duration(300), Duration(600),
                                Xi(), 11),
            Duration(50));
}

TEST(ReduceLambda, NoQueueingNoPenalty) {
  EXPECT_EQ(ComputeReduceLambda(Duration(100), Duration(0), Duration(600),
                                Xi(), 11),
            Duration(0));
  EXPECT_EQ(ComputeReduceLambda(Duration(100), Duration(0), Duration(0), Xi(),
                                11),
            Duration(0));
}

TEST(ReduceLambda, CappedAtStreamingFloor) {
  // xi(5) - xi(1) = 200.
  EXPECT_EQ(ComputeReduceLambda(Duration(1000), Duration(600), Duration(600),
                                Xi(), 5),
            Duration(200));
}

TEST(IncreaseLambda, CappedByHeadroomToMaxBatch) {
  auto xi = Xi(10);
  EXPECT_EQ(ComputeIncreaseLambda(Duration(2000), Duration(300), Duration(600),
                                  Duration(250), 5, xi),
            Duration(500));
}

TEST(IncreaseLambda, ZeroAtMaxBatch) {
  auto xi = Xi(10);
  EXPECT_EQ(ComputeIncreaseLambda(Duration(2000), Duration(300), Duration(600),
                                  Duration(250), 10, xi),
            Duration(0));
}

TEST(IncreaseLambda, ProportionalShare) {
  auto xi = Xi(10);
  EXPECT_EQ(ComputeIncreaseLambda(Duration(100), Duration(300), Duration(600),
                                  Duration(250), 5, xi),
            Duration(50));
}

struct Fixture {
  BudgetTable budgets{std::vector<TaskId>{kDest}};
  TimingHistory history;
};

TEST(ApplyReject, TakesMinimum) {
  Fixture f;
  f.history.Record(1, {Duration(3000), Duration(300), 11, kDest});
  f.budgets.Set(kDest, Duration(3200));
  auto u = ApplyReject(f.budgets, f.history, {1, Duration(100), Duration(600)},
                       Xi());
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->after, Duration(2950));
  EXPECT_EQ(f.budgets.Get(kDest), Duration(2950));
}

TEST(ApplyReject, OutOfOrderSignalLeavesLowerBudget) {
  Fixture f;
  f.history.Record(1, {Duration(3000), Duration(300), 11, kDest});
  f.budgets.Set(kDest, Duration(2900));
  ApplyReject(f.budgets, f.history, {1, Duration(100), Duration(600)}, Xi());
  EXPECT_EQ(f.budgets.Get(kDest), Duration(2900));
}

TEST(ApplyReject, BootstrapIgnoresOldBudget) {
  Fixture f;
  f.history.Record(1, {Duration(3000), Duration(300), 11, kDest});
  auto u = ApplyReject(f.budgets, f.history, {1, Duration(100), Duration(600)},
                       Xi());
  ASSERT_TRUE(u.has_value());
  EXPECT_FALSE(u->before.has_value());
  EXPECT_EQ(f.budgets.Get(kDest), Duration(2950));
}

TEST(ApplyReject, UnknownEventIgnored) {
  Fixture f;
  f.budgets.Set(kDest, Duration(3200));
  EXPECT_FALSE(ApplyReject(f.budgets, f.history,
                           {99, Duration(100), Duration(600)}, Xi())
                   .has_value());
  EXPECT_EQ(f.budgets.Get(kDest), Duration(3200));
}

TEST(ApplyAccept, TakesMaximum) {
  Fixture f;
  // xi(5) = 350 here; exec_sum chosen so the proportional share is large.
  f.history.Record(1, {Duration(3000), Duration(250), 5, kDest});
  f.budgets.Set(kDest, Duration(3200));
  auto u = ApplyAccept(f.budgets, f.history, {1, Duration(2000), Duration(700)},
                       Xi(10));
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->after, Duration(3500));
}

TEST(ApplyAccept, SmallIncreaseKeepsHigherBudget) {
  Fixture f;
  f.history.Record(1, {Duration(3000), Duration(250), 5, kDest});
  f.budgets.Set(kDest, Duration(3200));
  // 200 * 350 / 700 = 100.
  ApplyAccept(f.budgets, f.history, {1, Duration(200), Duration(700)}, Xi(10));
  EXPECT_EQ(f.budgets.Get(kDest), Duration(3200));
}

TEST(ApplyAccept, BootstrapSetsDirectly) {
  Fixture f;
  f.history.Record(1, {Duration(3000), Duration(250), 5, kDest});
  ApplyAccept(f.budgets, f.history, {1, Duration(2000), Duration(700)}, Xi(10));
  EXPECT_EQ(f.budgets.Get(kDest), Duration(3500));
}

TEST(SinkEvaluate, AcceptsWhenEarlyEnough) {
  EventHeader a, b;
  a.source_id = 1;
  b.source_id = 2;
  b.sum_exec = Duration(777);
  std::vector<SinkArrival> batch = {{&a, Duration(4000)}, {&b, Duration(10000)}};
  auto acc = SinkEvaluate(batch, Duration(15000), Duration(2000));
  ASSERT_TRUE(acc.has_value());
  EXPECT_EQ(acc->event, 2u);
  EXPECT_EQ(acc->early_by, Duration(5000));
  EXPECT_EQ(acc->exec_sum, Duration(777));
}

TEST(SinkEvaluate, NoSignalWithinThreshold) {
  EventHeader a;
  std::vector<SinkArrival> batch = {{&a, Duration(14000)}};
  EXPECT_FALSE(SinkEvaluate(batch, Duration(15000), Duration(2000)));
  std::vector<SinkArrival> edge = {{&a, Duration(13000)}};
  EXPECT_FALSE(SinkEvaluate(edge, Duration(15000), Duration(2000)));
}

TEST(SinkEvaluate, EmptyBatch) {
  EXPECT_FALSE(SinkEvaluate({}, Duration(15000), Duration(2000)));
}

TEST(ProbeCounter, EveryKthDrop) {
  ProbeCounter c(100);
  for (int i = 1; i < 100; ++i) EXPECT_FALSE(c.OnDrop()) << i;
  EXPECT_TRUE(c.OnDrop());
  EXPECT_FALSE(c.OnDrop());
  EXPECT_EQ(c.drops(), 101u);
  EXPECT_EQ(c.probes(), 1u);
}

TEST(TimingHistory, EvictsOldestFirst) {
  TimingHistory h(3);
  for (EventId i = 1; i <= 5; ++i) h.Record(i, {Duration(i), Duration(0), 1, kDest});
  EXPECT_EQ(h.size(), 3u);
  EXPECT_EQ(h.evicted(), 2u);
  EXPECT_EQ(h.Find(1), nullptr);
  EXPECT_EQ(h.Find(2), nullptr);
  ASSERT_NE(h.Find(5), nullptr);
  EXPECT_EQ(h.Find(5)->departure, Duration(5));
  h.Erase(5);
  EXPECT_EQ(h.Find(5), nullptr);
}

TEST(BudgetTable, EffectiveIsMaxOnceAllSet) {
  std::vector<TaskId> ds = {TaskId{1}, TaskId{2}};
  BudgetTable t(ds);
  EXPECT_FALSE(t.Effective().has_value());
  t.Set(TaskId{1}, Duration(500));
  EXPECT_FALSE(t.Effective().has_value());
  EXPECT_TRUE(t.AnyUnset());
  t.Set(TaskId{2}, Duration(300));
  EXPECT_EQ(t.Effective(), Duration(500));
  EXPECT_THROW(t.Get(TaskId{9}), RoutingError);
}

}  // namespace
}  // namespace spotflow::budget
