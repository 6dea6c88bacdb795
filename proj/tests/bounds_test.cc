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

#include <cmath>
#include <cstdint>
#include <optional>

#include <gtest/gtest.h>

#include "spotflow/bounds/oracle.h"
#include "spotflow/core/rng.h"

namespace spotflow::bounds {
namespace {

// Closed forms for affine xi(m) = c0 + c1 m with integer rate, all in
// integer arithmetic. Independent of the exhaustive search in the library.
struct AffineOracle {
  int64_t c0, c1, m_max, h;

  // Constraint 1 at integer rate w: (m-1) 1000 / w + c0 + c1 m <= h
  //   <=> m (1000 + c1 w) <= (h - c0) w + 1000.
  // Constraint 2: 2 (c0 + c1 m) <= h.
  std::optional<int64_t> StableBatch(int64_t w) const {
    int64_t num = (h - c0) * w + 1000;
    int64_t m1 = num < 0 ? -1 : num / (1000 + c1 * w);
    int64_t twice = h - 2 * c0;
    int64_t m2 = twice < 0 ? -1 : twice / (2 * c1);
    int64_t m = std::min({m1, m2, m_max});
    if (m < 1) return std::nullopt;
    return m;
  }

  // Smallest m with 1000 m >= w (c0 + c1 m), or none.
  std::optional<int64_t> ServiceBatch(int64_t w) const {
    int64_t denom = 1000 - c1 * w;
    if (denom <= 0) return std::nullopt;
    int64_t m = std::max<int64_t>(1, (c0 * w + denom - 1) / denom);
    if (m > m_max) return std::nullopt;
    return m;
  }

  // omega_max: largest m with 2 xi(m) <= h gives the best service rate,
  // and constraint 1 then holds at that rate.
  double OmegaMax() const {
    int64_t twice = h - 2 * c0;
    int64_t m2 = std::min(twice < 0 ? 0 : twice / (2 * c1), m_max);
    if (m2 >= 1) return 1000.0 * m2 / (c0 + c1 * m2);
    if (c0 + c1 <= h) return 1000.0 / (c0 + c1);
    return 0;
  }
};

ExecTimeModel Affine(int64_t c0, int64_t c1, int m_max) {
  return ExecTimeModel::Affine(Duration(c0), Duration(c1), m_max);
}

TEST(MaxStableBatch, WorkedExample) {
  EXPECT_EQ(MaxStableBatch(10, Affine(100, 100, 25), Duration(2000)), 9);
}

TEST(MaxStableBatch, NoneWhenSingleEventDoesNotFit) {
  EXPECT_FALSE(MaxStableBatch(10, Affine(100, 100, 25), Duration(150)));
  EXPECT_FALSE(MaxStableBatch(0, Affine(100, 100, 25), Duration(2000)));
}

TEST(MaxStableBatch, MatchesClosedForm) {
  Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    AffineOracle o{static_cast<int64_t>(rng.Below(300)),
                   1 + static_cast<int64_t>(rng.Below(150)),
                   1 + static_cast<int64_t>(rng.Below(40)),
                   50 + static_cast<int64_t>(rng.Below(8000))};
    int64_t w = 1 + static_cast<int64_t>(rng.Below(60));
    auto got = MaxStableBatch(static_cast<double>(w),
                              Affine(o.c0, o.c1, static_cast<int>(o.m_max)),
                              Duration(o.h));
    auto want = o.StableBatch(w);
    ASSERT_EQ(got.has_value(), want.has_value()) << trial;
    if (got) {
      EXPECT_EQ(*got, *want) << trial;
    }
  }
}

TEST(MaxStableBatch, NondecreasingInHeadroom) {
  auto xi = Affine(60, 80, 25);
  int last = 0;
  for (int h = 100; h < 6000; h += 25) {
    int m = MaxStableBatch(7, xi, Duration(h)).value_or(0);
    EXPECT_GE(m, last) << h;
    last = m;
  }
}

TEST(MaxSustainableRate, WorkedExample) {
  RateBound b = MaxSustainableRate(Affine(100, 100, 25), Duration(2000));
  EXPECT_EQ(b.batch, 9);
  EXPECT_DOUBLE_EQ(b.omega_max, 9.0);
}

TEST(MaxSustainableRate, StreamingFallback) {
  RateBound b = MaxSustainableRate(Affine(100, 100, 25), Duration(300));
  EXPECT_EQ(b.batch, 1);
  EXPECT_DOUBLE_EQ(b.omega_max, 5.0);
  RateBound none = MaxSustainableRate(Affine(100, 100, 25), Duration(150));
  EXPECT_EQ(none.batch, 0);
  EXPECT_DOUBLE_EQ(none.omega_max, 0.0);
}

TEST(MaxSustainableRate, MatchesClosedForm) {
  Rng rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    AffineOracle o{static_cast<int64_t>(rng.Below(300)),
                   1 + static_cast<int64_t>(rng.Below(150)),
                   1 + static_cast<int64_t>(rng.Below(40)),
                   50 + static_cast<int64_t>(rng.Below(8000))};
    RateBound b = MaxSustainableRate(
        Affine(o.c0, o.c1, static_cast<int>(o.m_max)), Duration(o.h));
    EXPECT_NEAR(b.omega_max, o.OmegaMax(), 1e-9) << trial;
  }
}

TEST(MaxSustainableRate, BatchOnlyReadingIsUnbounded) {
  RateBound b = MaxSustainableRateBatchOnly(Affine(100, 100, 25),
                                            Duration(2000));
  EXPECT_TRUE(std::isinf(b.omega_max));
  EXPECT_EQ(b.batch, 9);
}

TEST(ImpliedDropRate, ClampsAtZero) {
  EXPECT_DOUBLE_EQ(ImpliedDropRate(49, 19), 30);
  EXPECT_DOUBLE_EQ(ImpliedDropRate(5, 9), 0);
}

TEST(AvgLatencyIncrease, Examples) {
  auto xi = Affine(100, 100, 25);
  EXPECT_DOUBLE_EQ(AvgLatencyIncrease(10, xi, 1), 0);
  EXPECT_DOUBLE_EQ(AvgLatencyIncrease(8, xi, 9), 1300);
  double q8 = AvgLatencyIncrease(8, xi, 9) - 800;
  double q16 = AvgLatencyIncrease(16, xi, 9) - 800;
  EXPECT_DOUBLE_EQ(q16, q8 / 2);
}

TEST(Calibrate, GridHas101Rates) {
  auto rates = CalibrationRates();
  ASSERT_EQ(rates.size(), 101u);
  EXPECT_EQ(rates.front(), 1);
  EXPECT_EQ(rates[1], 10);
  EXPECT_EQ(rates.back(), 1000);
}

TEST(Calibrate, MatchesClosedFormAndIsMonotone) {
  AffineOracle o{54, 67, 25, 3650};
  auto table = Calibrate(Affine(54, 67, 25), Duration(3650),
                         CalibrationRates(30, 1));
  int last = 0;
  for (const CalibrationEntry& e : table) {
    int64_t w = static_cast<int64_t>(e.rate);
    auto service = o.ServiceBatch(w);
    auto stable = o.StableBatch(w);
    bool feasible = service && stable && *service <= *stable;
    EXPECT_EQ(e.feasible, feasible) << e.rate;
    if (feasible) {
      EXPECT_EQ(e.batch, *service) << e.rate;
    }
    EXPECT_GE(e.batch, last) << e.rate;
    last = e.batch;
  }
}

TEST(Calibrate, ExampleRates) {
  auto table = Calibrate(Affine(100, 100, 25), Duration(2000), {5, 9, 10});
  EXPECT_EQ(table[0].batch, 1);
  EXPECT_TRUE(table[0].feasible);
  EXPECT_EQ(table[1].batch, 9);
  EXPECT_TRUE(table[1].feasible);
  // Service rate never reaches 10/s; the largest stable batch is used.
  EXPECT_FALSE(table[2].feasible);
  EXPECT_EQ(table[2].batch, 9);
}

}  // namespace
}  // namespace spotflow::bounds
