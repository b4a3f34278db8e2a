/*
 * Copyright 2026 The comprank Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "comprank/permutation.h"

#include <random>

#include "gtest/gtest.h"

namespace comprank {
namespace {

using Order = std::vector<size_t>;

TEST(ParsePermutationTest, WellFormedAnswerNeedsNoRepair) {
  const ParsedPermutation parsed = ParsePermutation("[1, 4, 3, 0, 2]", 5);
  EXPECT_EQ(parsed.order, (Order{1, 4, 3, 0, 2}));
  EXPECT_EQ(parsed.repairs, 0);
  EXPECT_EQ(parsed.raw, "[1, 4, 3, 0, 2]");
}

TEST(ParsePermutationTest, DuplicatesDroppedAndMissingAppended) {
  const ParsedPermutation parsed = ParsePermutation("[2, 2, 0]", 4);
  EXPECT_EQ(parsed.order, (Order{2, 0, 1, 3}));
  EXPECT_EQ(parsed.repairs, kDeduplicated | kAppendedMissing);
  EXPECT_EQ(RepairFlagNames(parsed.repairs),
            (std::vector<std::string>{"deduplicated", "appended_missing"}));
}

TEST(ParsePermutationTest, NoListFallsBackToIdentity) {
  const ParsedPermutation parsed = ParsePermutation("no list here", 3);
  EXPECT_EQ(parsed.order, (Order{0, 1, 2}));
  EXPECT_EQ(parsed.repairs, kFallbackIdentity);
}

TEST(ParsePermutationTest, OutOfRangeAndNonIntegersDropped) {
  const ParsedPermutation parsed =
      ParsePermutation("Answer: [3, x, 7, -1, 99999999999999999999999, 1]", 4);
  EXPECT_EQ(parsed.order, (Order{3, 1, 0, 2}));
  EXPECT_EQ(parsed.repairs, kDroppedOutOfRange | kAppendedMissing);
}

TEST(ParsePermutationTest, SkipsBracketsWithoutIntegers) {
  EXPECT_EQ(ParsePermutation("[thinking] [[2, 1, 0]] [0, 1, 2]", 3).order,
            (Order{2, 1, 0}));
  EXPECT_EQ(ParsePermutation("[ ]\n[1,0]", 2).order, (Order{1, 0}));
  EXPECT_EQ(ParsePermutation("[1, 0", 2).repairs, kFallbackIdentity);
}

TEST(ParsePermutationTest, ArbitraryBytesAlwaysYieldAPermutation) {
  std::mt19937 gen(42);
  const std::string alphabet = "[],0123456789 -+x\n";
  for (int trial = 0; trial < 3000; ++trial) {
    const size_t n = 1 + gen() % 200;
    std::string raw;
    const size_t length = gen() % 300;
    for (size_t i = 0; i < length; ++i) {
      raw += (trial % 2 == 0) ? alphabet[gen() % alphabet.size()]
                              : static_cast<char>(gen() % 256);
    }
    const ParsedPermutation parsed = ParsePermutation(raw, n);
    ASSERT_TRUE(IsPermutation(parsed.order, n)) << raw;
  }
}

TEST(FormatPermutationTest, MatchesAnswerFormat) {
  EXPECT_EQ(FormatPermutation({1, 4, 3, 0, 2}), "[1, 4, 3, 0, 2]");
  EXPECT_EQ(FormatPermutation({}), "[]");
  EXPECT_FALSE(IsPermutation({0, 0}, 2));
  EXPECT_FALSE(IsPermutation({0, 2}, 2));
}

}  // namespace
}  // namespace comprank
