// Copyright 2026 The flashauth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flashauth/rng.h"

#include <cmath>
#include <set>

#include "gtest/gtest.h"

namespace flashauth {
namespace {

TEST(Mix64, KnownSplitMixOutput) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(Mix64(0), 0xe220a8397b1dcdafULL);
}

TEST(CounterRng, PureFunctionOfInputs) {
  const CounterRng a(42), b(42);
  for (uint64_t c = 0; c < 100; ++c) {
    EXPECT_EQ(a.Bits(3, c), b.Bits(3, c));
    EXPECT_EQ(a.Normal(2, c), b.Normal(2, c));
  }
  EXPECT_NE(a.Bits(1, 0), a.Bits(2, 0));
  EXPECT_NE(a.Bits(1, 0), CounterRng(43).Bits(1, 0));
}

TEST(CounterRng, UniformMoments) {
  const CounterRng r(5);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.Uniform(1, i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0 / 12, 0.002);
}

TEST(CounterRng, NormalMoments) {
  const CounterRng r(9);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = r.Normal(2, i);
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.015);
}

TEST(DeriveSeed, DistinctStreams) {
  std::set<uint64_t> seen;
  for (uint64_t s = 0; s < 1000; ++s) seen.insert(DeriveSeed(77, s));
  EXPECT_EQ(seen.size(), 1000u);
}

}  // namespace
}  // namespace flashauth
