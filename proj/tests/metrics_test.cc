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

#include "comprank/metrics.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace comprank {
namespace {

using Ids = std::vector<std::string>;
using Truth = std::set<std::string>;

TEST(HitAtKTest, PositionTest) {
  const Ids order = {"a", "b", "c"};
  EXPECT_EQ(HitAtK(order, {"b"}, 1), 0.0);
  EXPECT_EQ(HitAtK(order, {"b"}, 3), 1.0);
  for (size_t k : {1, 2, 3, 10}) EXPECT_EQ(HitAtK(order, {"a"}, k), 1.0);
  EXPECT_EQ(HitAtK(order, {"z"}, 10), 0.0);
}

TEST(NdcgAtKTest, HandEvaluatedExamples) {
  EXPECT_EQ(NdcgAtK(Ids{"b", "a", "c"}, {"b"}, 1), 1.0);
  EXPECT_DOUBLE_EQ(NdcgAtK(Ids{"a", "b", "c"}, {"c"}, 3), 0.5);
  const double expected =
      (1 / std::log2(3.0) + 1 / std::log2(4.0)) / (1 + 1 / std::log2(3.0));
  EXPECT_DOUBLE_EQ(NdcgAtK(Ids{"a", "b", "c"}, {"b", "c"}, 3), expected);
  EXPECT_NEAR(expected, 0.6934, 1e-4);
}

TEST(NdcgAtKTest, IdealNormalizationCapsAtK) {
  // Five relevant items but only two slots: the ideal DCG counts two.
  EXPECT_EQ(NdcgAtK(Ids{"a", "b", "x"}, {"a", "b", "c", "d", "e"}, 2), 1.0);
  // Short lists are not padded.
  EXPECT_DOUBLE_EQ(NdcgAtK(Ids{"a"}, {"a", "b"}, 5),
                   1.0 / (1.0 + 1.0 / std::log2(3.0)));
}

// DCG by definition; the ideal DCG is found by enumerating orderings.
double BruteForceNdcg(const Ids& order, const Truth& truth, size_t k) {
  auto dcg = [&](const Ids& list) {
    double sum = 0;
    for (size_t i = 0; i < std::min(k, list.size()); ++i) {
      if (truth.contains(list[i])) sum += 1.0 / std::log2(i + 2.0);
    }
    return sum;
  };
  Ids perm = order;
  std::sort(perm.begin(), perm.end());
  double best = 0;
  do {
    best = std::max(best, dcg(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return dcg(order) / best;
}

TEST(NdcgAtKTest, MatchesBruteForceOnSmallLists) {
  const Ids items = {"a", "b", "c", "d", "e", "f"};
  for (const Truth& truth :
       {Truth{"a"}, Truth{"c", "f"}, Truth{"a", "b", "e"},
        Truth{"a", "b", "c", "d", "e", "f"}}) {
    for (size_t k = 1; k <= 6; ++k) {
      Ids perm = items;
      double best = 0;
      do {
        const double value = NdcgAtK(perm, truth, k);
        ASSERT_NEAR(value, BruteForceNdcg(perm, truth, k), 1e-12);
        best = std::max(best, value);
      } while (std::next_permutation(perm.begin(), perm.end()));
      EXPECT_EQ(best, 1.0);
    }
  }
}

TEST(AccuracyMetricsTest, HitMonotoneInKAndNdcgAtOneEqualsHit) {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 500; ++trial) {
    Ids order;
    const size_t n = 1 + gen() % 30;
    for (size_t i = 0; i < n; ++i) order.push_back("i" + std::to_string(i));
    std::shuffle(order.begin(), order.end(), gen);
    Truth truth;
    const size_t t = 1 + gen() % 5;
    for (size_t i = 0; i < t; ++i) truth.insert("i" + std::to_string(gen() % 40));
    double previous = 0;
    for (size_t k = 1; k <= 35; ++k) {
      const double hit = HitAtK(order, truth, k);
      ASSERT_GE(hit, previous);
      previous = hit;
      const double ndcg = NdcgAtK(order, truth, k);
      ASSERT_GE(ndcg, 0.0);
      ASSERT_LE(ndcg, 1.0);
    }
    ASSERT_EQ(NdcgAtK(order, truth, 1), HitAtK(order, truth, 1));
  }
}

TEST(TokenizeTest, Examples) {
  EXPECT_EQ(Tokenize("iPhone 13 Case"), (Ids{"iphone", "13", "case"}));
  EXPECT_EQ(Tokenize("USB-C Cable (2m)"), (Ids{"usb", "c", "cable", "2m"}));
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize(" -- () ").empty());
  EXPECT_EQ(Tokenize("caf\xc3\xa9 au lait"), (Ids{"caf", "au", "lait"}));
}

TEST(EntropyAtKTest, Examples) {
  EXPECT_NEAR(EntropyAtK(Ids{"a a b b"}), std::log(2.0), 1e-15);
  EXPECT_NEAR(EntropyAtK(Ids{"a a", "b", "b"}), 0.6931, 1e-4);
  EXPECT_EQ(EntropyAtK(Ids{"x x x"}), 0.0);
  EXPECT_NEAR(EntropyAtK(Ids{"a b", "c d"}), std::log(4.0), 1e-15);
  EXPECT_EQ(EntropyAtK(Ids{}), 0.0);
  EXPECT_EQ(EntropyAtK(Ids{"", "--"}), 0.0);
}

TEST(VocabAtKTest, Examples) {
  EXPECT_EQ(VocabAtK(Ids{"a a b"}), 2.0);
  EXPECT_EQ(VocabAtK(Ids{"", ""}), 0.0);
  EXPECT_EQ(VocabAtK(Ids{"a b c", "d e f"}), 6.0);
}

TEST(DiversityMetricsTest, EntropyBoundsAndPermutationInvariance) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 1000; ++trial) {
    Ids titles;
    const size_t n = 1 + gen() % 8;
    for (size_t i = 0; i < n; ++i) {
      std::string title;
      const size_t length = 1 + gen() % 6;
      for (size_t j = 0; j < length; ++j) {
        title += "t" + std::to_string(gen() % 12) + " ";
      }
      titles.push_back(title);
    }
    const double entropy = EntropyAtK(titles);
    const double vocab = VocabAtK(titles);
    ASSERT_GE(entropy, 0.0);
    ASSERT_LE(entropy, std::log(vocab) + 1e-12);
    Ids shuffled = titles;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    ASSERT_EQ(EntropyAtK(shuffled), entropy);
    ASSERT_EQ(VocabAtK(shuffled), vocab);
  }
}

TEST(AggregateTest, MeansPerCutoff) {
  const std::vector<int> cutoffs = {1, 3};
  const std::vector<std::vector<QueryMetrics>> per_query = {
      {{1, 0, 0, 1.0, 19}, {3, 1, 0.5, 2.0, 30}},
      {{1, 1, 1, 2.0, 20}, {3, 1, 1.0, 3.0, 40}}};
  const auto rows = Aggregate(per_query, "m", Stage::kBase, "d", cutoffs);
  ASSERT_EQ(rows.size(), 2);
  EXPECT_EQ(rows[0].k, 1);
  EXPECT_EQ(rows[0].hit, 0.5);
  EXPECT_EQ(rows[0].vocab, 19.5);
  EXPECT_EQ(rows[1].ndcg, 0.75);
  EXPECT_EQ(rows[1].entropy, 2.5);

  const std::vector<std::vector<QueryMetrics>> duplicated = {
      per_query[0], per_query[0], per_query[0]};
  const auto single = Aggregate(std::span(per_query).first(1), "m",
                                Stage::kBase, "d", cutoffs);
  const auto tripled =
      Aggregate(duplicated, "m", Stage::kBase, "d", cutoffs);
  EXPECT_DOUBLE_EQ(single[1].hit, tripled[1].hit);
  EXPECT_DOUBLE_EQ(single[1].entropy, tripled[1].entropy);

  EXPECT_THROW(Aggregate({}, "m", Stage::kBase, "d", cutoffs), ConfigError);
  EXPECT_THROW(Aggregate(per_query, "m", Stage::kBase, "d", std::vector{1}),
               ConfigError);
}

MetricsRow Row(double hit, double ndcg, double entropy, double vocab,
               std::string retriever = "m", Stage stage = Stage::kBase,
               int k = 1) {
  return {retriever, stage, "d", k, hit, ndcg, entropy, vocab};
}

TEST(LiftTest, PublishedTableValues) {
  EXPECT_NEAR(*LiftPercent(0.351, 0.154), 127.9, 0.1);
  EXPECT_NEAR(*LiftPercent(2.93, 2.86), 2.45, 0.1);
  const MetricLifts same = Lift(Row(.2, .2, 3, 10), Row(.2, .2, 3, 10));
  for (const auto& lift : same) EXPECT_EQ(*lift, 0.0);
}

TEST(LiftTest, ZeroBaseIsAbsentAndMismatchThrows) {
  const MetricLifts lifts = Lift(Row(.5, .5, 1, 1), Row(0, .25, 1, 1));
  EXPECT_FALSE(lifts[0].has_value());
  EXPECT_EQ(*lifts[1], 100.0);
  EXPECT_THROW(Lift(Row(1, 1, 1, 1, "m", Stage::kBase, 3), Row(1, 1, 1, 1)),
               ConfigError);
}

TEST(LiftTest, InvariantUnderCommonScaling) {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> value(0.01, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double base = value(gen), enhanced = value(gen), scale = value(gen);
    ASSERT_NEAR(*LiftPercent(enhanced * scale, base * scale),
                *LiftPercent(enhanced, base), 1e-9);
  }
}

TEST(LiftWithStdErrTest, Examples) {
  const auto flat = LiftWithStdErr(std::vector<double>{10, 10, 10});
  EXPECT_EQ(flat.mean, 10);
  EXPECT_EQ(flat.std_err, 0);
  EXPECT_FALSE(flat.degenerate);
  const auto spread = LiftWithStdErr(std::vector<double>{0, 20});
  EXPECT_DOUBLE_EQ(spread.mean, 10);
  EXPECT_DOUBLE_EQ(spread.std_err, 10);
  const auto single = LiftWithStdErr(std::vector<double>{7});
  EXPECT_EQ(single.mean, 7);
  EXPECT_EQ(single.std_err, 0);
  EXPECT_TRUE(single.degenerate);
  EXPECT_THROW(LiftWithStdErr(std::vector<double>{}), ConfigError);
}

TEST(ComputeLiftRowsTest, AggregatesComparisonsAcrossRetrievers) {
  std::vector<MetricsRow> rows;
  // Retriever r1: base hit .1, diversity .2, final .3; r2: .2, .2, .4.
  const double hits[2][3] = {{.1, .2, .3}, {.2, .2, .4}};
  for (int r = 0; r < 2; ++r) {
    for (size_t s = 0; s < 3; ++s) {
      rows.push_back(Row(hits[r][s], hits[r][s], 1, 1,
                         "r" + std::to_string(r + 1), kAllStages[s]));
    }
  }
  const auto lifts = ComputeLiftRows(rows);
  ASSERT_EQ(lifts.size(), 3 * 1 * 4);
  const LiftRow& overall_hit = lifts[0];
  EXPECT_EQ(overall_hit.comparison, Comparison::kOverallVsBase);
  EXPECT_EQ(overall_hit.metric, Metric::kHit);
  EXPECT_EQ(overall_hit.n_retrievers, 2);
  // Lifts 200% and 100%.
  EXPECT_NEAR(*overall_hit.mean_lift_pct, 150.0, 1e-9);
  EXPECT_NEAR(*overall_hit.std_err, 50.0, 1e-9);
  const LiftRow& div_entropy = lifts[4 + 2];
  EXPECT_EQ(div_entropy.comparison, Comparison::kDiversityVsBase);
  EXPECT_EQ(div_entropy.metric, Metric::kEntropy);
  EXPECT_EQ(*div_entropy.mean_lift_pct, 0.0);
  const LiftRow& final_hit = lifts[8];
  EXPECT_EQ(final_hit.comparison, Comparison::kFinalVsDiversity);
  EXPECT_NEAR(*final_hit.mean_lift_pct, 75.0, 1e-9);
}

}  // namespace
}  // namespace comprank
