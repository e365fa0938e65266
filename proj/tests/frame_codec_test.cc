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

#include "flashauth/frame_codec.h"

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace flashauth {
namespace {

SymbolSequence Seq(const char* text) { return *ParseSymbols(text); }

// Reference class/pattern pairs (information symbols, vehicle perspective).
struct Pair {
  int index;
  std::array<Symbol, 3> info;
};
const std::array<Pair, 4> kReferencePairs = {{
    {3, {kBothOn, kBothOn, kRightOn}},
    {4, {kBothOn, kLeftOn, kBothOn}},
    {14, {kLeftOn, kLeftOn, kLeftOn}},
    {15, {kLeftOn, kLeftOn, kRightOn}},
}};

// Enumerates every digit-value assignment of {11, 10, 01} and every digit
// order, and keeps the base-3 readings consistent with all reference pairs.
TEST(DigitMapOracle, ReferencePairsDetermineAUniqueReading) {
  const std::array<Symbol, 3> symbols = {kBothOn, kLeftOn, kRightOn};
  std::array<int, 3> values = {0, 1, 2};
  struct Fit {
    std::array<int, 3> values;
    std::array<int, 3> order;
  };
  std::vector<Fit> fits;
  do {
    std::array<int, 3> order = {0, 1, 2};
    do {
      auto value_of = [&](Symbol s) {
        for (int i = 0; i < 3; ++i) {
          if (symbols[i] == s) return values[i];
        }
        return -100;
      };
      bool all = true;
      for (const auto& p : kReferencePairs) {
        const int got = 9 * value_of(p.info[order[0]]) +
                        3 * value_of(p.info[order[1]]) +
                        value_of(p.info[order[2]]) + 1;
        all = all && got == p.index;
      }
      if (all) fits.push_back({values, order});
    } while (std::next_permutation(order.begin(), order.end()));
  } while (std::next_permutation(values.begin(), values.end()));

  ASSERT_EQ(fits.size(), 1u);
  EXPECT_EQ(fits[0].values, (std::array<int, 3>{0, 1, 2}));
  EXPECT_EQ(fits[0].order, (std::array<int, 3>{0, 1, 2}));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(*SymbolValue(symbols[i]), fits[0].values[i]);
  }
}

TEST(SymbolValue, MapsInformationSymbols) {
  EXPECT_EQ(*SymbolValue(kBothOn), 0);
  EXPECT_EQ(*SymbolValue(kLeftOn), 1);
  EXPECT_EQ(*SymbolValue(kRightOn), 2);
}

TEST(SymbolValue, RejectsInterrupt) { EXPECT_FALSE(SymbolValue(kDark).ok()); }

TEST(EncodeClass, ReferencePairs) {
  for (const auto& p : kReferencePairs) {
    auto frame = EncodeClass(p.index);
    ASSERT_TRUE(frame.ok());
    EXPECT_EQ(frame->InfoSymbols(), p.info) << "class " << p.index;
  }
  EXPECT_EQ(EncodeClass(3)->ToString(), "11-00-11-00-11-00-01");
  EXPECT_EQ(EncodeClass(15)->ToString(), "11-00-10-00-10-00-01");
}

TEST(EncodeClass, FirstClassIsAllBothOn) {
  EXPECT_EQ(EncodeClass(1)->InfoSymbols(),
            (std::array<Symbol, 3>{kBothOn, kBothOn, kBothOn}));
}

TEST(EncodeClass, RejectsOutOfRange) {
  EXPECT_FALSE(EncodeClass(0).ok());
  EXPECT_FALSE(EncodeClass(28).ok());
  EXPECT_FALSE(EncodeClass(-3).ok());
}

TEST(EncodeClass, FramesSatisfyLayoutInvariants) {
  std::set<std::string> distinct;
  for (int i = 1; i <= kNumValidClasses; ++i) {
    const SecurityFrame f = *EncodeClass(i);
    const auto& s = f.symbols();
    EXPECT_EQ(s[0], kBothOn);
    EXPECT_EQ(s[1], kDark);
    EXPECT_EQ(s[3], kDark);
    EXPECT_EQ(s[5], kDark);
    for (int j : {2, 4, 6}) EXPECT_NE(s[j], kDark);
    EXPECT_EQ(2 * static_cast<int>(s.size()), kFrameBits);
    distinct.insert(f.ToString());
  }
  EXPECT_EQ(distinct.size(), 27u);
}

TEST(DecodeSymbols, RoundTripsEveryClass) {
  for (int i = 1; i <= kNumValidClasses; ++i) {
    EXPECT_EQ(DecodeSymbols(EncodeClass(i)->symbols()),
              *ClassLabel::Valid(i));
  }
}

TEST(DecodeSymbols, InterruptViolationIsRandomFlash) {
  const ClassLabel l = DecodeSymbols(Seq("11-00-11-10-11-00-11"));
  EXPECT_EQ(l, ClassLabel::RandomFlash());
  EXPECT_EQ(l.code(), 28);
}

TEST(DecodeSymbols, DarknessIsAllZero) {
  const ClassLabel l = DecodeSymbols(Seq("00-00-00-00-00-00-00"));
  EXPECT_EQ(l, ClassLabel::AllZero());
  EXPECT_EQ(l.code(), 29);
}

TEST(DecodeSymbols, ReferenceClass15) {
  EXPECT_EQ(DecodeSymbols(Seq("11-00-10-00-10-00-01")), *ClassLabel::Valid(15));
}

TEST(DecodeSymbols, ZeroInformationSymbolIsRandomFlash) {
  EXPECT_EQ(DecodeSymbols(Seq("11-00-10-00-00-00-01")),
            ClassLabel::RandomFlash());
  EXPECT_EQ(DecodeSymbols(Seq("10-00-10-00-10-00-01")),
            ClassLabel::RandomFlash());
}

// Every one of the 4^7 inputs maps to exactly the label the invariants imply.
TEST(DecodeSymbols, TotalOverAllSequences) {
  const std::array<Symbol, 4> all = {kBothOn, kLeftOn, kRightOn, kDark};
  int valid = 0;
  for (int code = 0; code < (1 << 14); ++code) {
    SymbolSequence seq;
    for (int j = 0; j < kFrameSymbols; ++j) seq[j] = all[(code >> (2 * j)) & 3];
    const ClassLabel l = DecodeSymbols(seq);
    if (l.is_valid()) {
      ++valid;
      EXPECT_EQ(EncodeClass(l).symbols(), seq);
    }
  }
  EXPECT_EQ(valid, 27);
}

TEST(Mirror, SwapsLeftAndRight) {
  const SymbolSequence s = Seq("11-00-10-00-10-00-01");
  EXPECT_EQ(FormatSymbols(Mirror(s)), "11-00-01-00-01-00-10");
  EXPECT_EQ(Mirror(kBothOn), kBothOn);
  EXPECT_EQ(Mirror(kDark), kDark);
}

TEST(Mirror, InvolutionOnValidFramesAndClosed) {
  std::set<int> images;
  for (int i = 1; i <= kNumValidClasses; ++i) {
    const SecurityFrame f = *EncodeClass(i);
    EXPECT_EQ(Mirror(Mirror(f)), f);
    const ClassLabel m = DecodeSymbols(Mirror(f).symbols());
    ASSERT_TRUE(m.is_valid());
    images.insert(m.index());
  }
  EXPECT_EQ(images.size(), 27u);
}

TEST(Mirror, Class15ReadsAs26) {
  EXPECT_EQ(DecodeSymbols(Mirror(EncodeClass(15)->symbols())).index(), 26);
}

TEST(ClassLabel, Codes) {
  EXPECT_EQ(ClassLabel::FromCode(28)->kind(), ClassLabel::Kind::kRandomFlash);
  EXPECT_EQ(ClassLabel::FromCode(29)->kind(), ClassLabel::Kind::kAllZero);
  EXPECT_EQ(ClassLabel::FromCode(7)->index(), 7);
  EXPECT_FALSE(ClassLabel::FromCode(30).ok());
  EXPECT_FALSE(ClassLabel::Valid(0).ok());
}

TEST(ParseSymbols, RejectsMalformedText) {
  EXPECT_FALSE(ParseSymbols("11-00").ok());
  EXPECT_FALSE(ParseSymbols("11-00-12-00-10-00-01").ok());
  EXPECT_FALSE(SecurityFrame::FromSymbols(Seq("11-00-11-10-11-00-11")).ok());
}

}  // namespace
}  // namespace flashauth
