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

#include <stdexcept>

#include <gtest/gtest.h>

#include "spotflow/core/event.h"
#include "spotflow/core/exec_time_model.h"
#include "spotflow/core/rng.h"
#include "spotflow/core/time.h"

namespace spotflow {
namespace {

using std::chrono::milliseconds;

TEST(SkewCorrectedUpstreamTime, ZeroSkewIsRawUpstreamTime) {
  EXPECT_EQ(SkewCorrectedUpstreamTime(AtMillis(1000), AtMillis(400),
                                      Duration(0)),
            Duration(600));
  EXPECT_EQ(SkewCorrectedUpstreamTime(AtMillis(400), AtMillis(400),
                                      Duration(0)),
            Duration(0));
}

TEST(SkewCorrectedUpstreamTime, SubtractsSkew) {
  EXPECT_EQ(SkewCorrectedUpstreamTime(AtMillis(1000), AtMillis(400),
                                      Duration(250)),
            Duration(350));
}

TEST(SkewCorrectedUpstreamTime, NegativeWhenSkewOverstated) {
  EXPECT_LT(SkewCorrectedUpstreamTime(AtMillis(500), AtMillis(400),
                                      Duration(250)),
            Duration(0));
}

TEST(ClockDomain, ReadAddsSkewAndRoundTrips) {
  ClockDomain clock("node3", Duration(-1500));
  EXPECT_EQ(clock.Read(AtMillis(10'000)), AtMillis(8'500));
  EXPECT_EQ(clock.ToReference(clock.Read(AtMillis(777))), AtMillis(777));
  EXPECT_EQ(clock.device_id(), "node3");
}

TEST(ExecTimeModel, AffineEvaluation) {
  auto xi = ExecTimeModel::Affine(Duration(100), Duration(50), 25);
  EXPECT_EQ(xi.Eval(1), Duration(150));
  EXPECT_EQ(xi.Eval(10), Duration(600));
  EXPECT_EQ(xi.max_batch(), 25);
}

TEST(ExecTimeModel, StrictlyIncreasing) {
  auto xi = ExecTimeModel::Affine(Duration(54), Duration(67), 25);
  for (int b = 1; b < xi.max_batch(); ++b) {
    EXPECT_LT(xi.Eval(b), xi.Eval(b + 1)) << b;
  }
}

TEST(ExecTimeModel, OutOfRangeThrows) {
  auto xi = ExecTimeModel::Affine(Duration(100), Duration(50), 10);
  EXPECT_THROW(xi.Eval(0), std::out_of_range);
  EXPECT_THROW(xi.Eval(11), std::out_of_range);
}

TEST(ExecTimeModel, EmpiricalInterpolatesAndStaysMonotone) {
  auto xi = ExecTimeModel::Empirical({{1, 120}, {5, 200}, {10, 200}}, 12);
  EXPECT_EQ(xi.Eval(1), Duration(120));
  EXPECT_EQ(xi.Eval(3), Duration(160));
  EXPECT_EQ(xi.Eval(5), Duration(200));
  for (int b = 1; b < xi.max_batch(); ++b) EXPECT_LT(xi.Eval(b), xi.Eval(b + 1));
}

TEST(ExecTimeModel, FromTableRejectsNonMonotone) {
  EXPECT_THROW(ExecTimeModel::FromTable({}), std::invalid_argument);
  EXPECT_THROW(ExecTimeModel::FromTable({Duration(5), Duration(5)}),
               std::invalid_argument);
  EXPECT_NO_THROW(ExecTimeModel::FromTable({Duration(5), Duration(6)}));
}

TEST(OnlineExecTimeEstimator, MovesTowardsObservationsAndStaysMonotone) {
  auto prior = ExecTimeModel::Affine(Duration(100), Duration(100), 10);
  OnlineExecTimeEstimator est(prior);
  for (int i = 0; i < 50; ++i) est.Observe(3, Duration(1000));
  const auto& model = est.model();
  EXPECT_GT(model.Eval(3), Duration(900));
  for (int b = 1; b < model.max_batch(); ++b) {
    EXPECT_LT(model.Eval(b), model.Eval(b + 1)) << b;
  }
}

TEST(OnlineExecTimeEstimator, SingleObservationUsesSmoothing) {
  auto prior = ExecTimeModel::Affine(Duration(0), Duration(100), 3);
  OnlineExecTimeEstimator est(prior);
  est.Observe(1, Duration(200));
  // 0.8 * 100 + 0.2 * 200
  EXPECT_EQ(est.model().Eval(1), Duration(120));
}

TEST(EventHeader, UndroppableFlags) {
  EventHeader h;
  EXPECT_FALSE(h.Undroppable());
  h.probe = true;
  EXPECT_TRUE(h.Undroppable());
  h.probe = false;
  h.avoid_drop = true;
  EXPECT_TRUE(h.Undroppable());
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    uint64_t x = a.Next();
    EXPECT_EQ(x, b.Next());
    differs |= x != c.Next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, BelowStaysInRange) {
  Rng r(7);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(r.Below(13), 13u);
  for (int i = 0; i < 1000; ++i) {
    double u = r.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace spotflow
