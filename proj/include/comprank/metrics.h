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

#ifndef COMPRANK_METRICS_H_
#define COMPRANK_METRICS_H_

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "comprank/catalog.h"
#include "comprank/pipeline.h"

namespace comprank {

// 1 if any ground-truth id is among the first min(k, |order|) ids, else 0.
double HitAtK(std::span<const std::string> order,
              const std::set<std::string>& ground_truth, size_t k);

// Binary-relevance NDCG with a log2(position + 1) discount; the ideal DCG
// places min(|ground_truth|, k) relevant items at the head.
double NdcgAtK(std::span<const std::string> order,
               const std::set<std::string>& ground_truth, size_t k);

// Lowercased maximal runs of ASCII alphanumerics. Bytes >= 0x80 count as
// separators.
std::vector<std::string> Tokenize(std::string_view title);

// Shannon entropy in nats of the token distribution pooled over all titles.
// 0 for an empty pool.
double EntropyAtK(std::span<const std::string> titles);

// Distinct tokens across all titles.
double VocabAtK(std::span<const std::string> titles);

enum class Metric { kHit, kNdcg, kEntropy, kVocab };
inline constexpr Metric kAllMetrics[] = {Metric::kHit, Metric::kNdcg,
                                         Metric::kEntropy, Metric::kVocab};
std::string_view MetricName(Metric metric);

struct QueryMetrics {
  int k = 0;
  double hit = 0;
  double ndcg = 0;
  double entropy = 0;
  double vocab = 0;
};

// Metrics of one ranked list at every cutoff, titles looked up in catalog.
std::vector<QueryMetrics> EvaluateRankedList(
    std::span<const std::string> order,
    const std::set<std::string>& ground_truth, const ComplementGraph& catalog,
    std::span<const int> cutoffs);

struct MetricsRow {
  std::string retriever;
  Stage stage = Stage::kBase;
  std::string dataset;
  int k = 0;
  double hit = 0;
  double ndcg = 0;
  double entropy = 0;
  double vocab = 0;

  double value(Metric metric) const;
};

// Unweighted means over queries, one row per cutoff, summed in query order.
// Each element of per_query holds one query's metrics in cutoff order.
// Throws ConfigError on an empty query set or mismatched cutoffs.
std::vector<MetricsRow> Aggregate(
    std::span<const std::vector<QueryMetrics>> per_query,
    const std::string& retriever, Stage stage, const std::string& dataset,
    std::span<const int> cutoffs);

// 100 * (enhanced - base) / base; absent when base is 0.
std::optional<double> LiftPercent(double enhanced, double base);

using MetricLifts = std::array<std::optional<double>, 4>;

// Per-metric lift, indexed like kAllMetrics. Throws ConfigError if the rows
// differ in dataset or cutoff.
MetricLifts Lift(const MetricsRow& enhanced, const MetricsRow& base);

struct MeanStdErr {
  double mean = 0;
  double std_err = 0;
  // Fewer than two values: std_err is 0 by convention.
  bool degenerate = false;
};

// Mean and sample standard deviation / sqrt(count). Throws ConfigError on an
// empty list.
MeanStdErr LiftWithStdErr(std::span<const double> lifts);

enum class Comparison { kOverallVsBase, kDiversityVsBase, kFinalVsDiversity };
inline constexpr Comparison kAllComparisons[] = {
    Comparison::kOverallVsBase, Comparison::kDiversityVsBase,
    Comparison::kFinalVsDiversity};
std::string_view ComparisonName(Comparison comparison);
Stage EnhancedStage(Comparison comparison);
Stage BaselineStage(Comparison comparison);

struct LiftRow {
  Metric metric = Metric::kHit;
  std::string dataset;
  int k = 0;
  Comparison comparison = Comparison::kOverallVsBase;
  // Absent when no retriever has a nonzero baseline for this metric.
  std::optional<double> mean_lift_pct;
  // Absent with fewer than two contributing retrievers.
  std::optional<double> std_err;
  size_t n_retrievers = 0;
};

// Lift of every comparison, cutoff and metric, aggregated across the
// retrievers present in `rows`. Ordered by dataset, comparison, K, metric.
std::vector<LiftRow> ComputeLiftRows(std::span<const MetricsRow> rows);

}  // namespace comprank

#endif  // COMPRANK_METRICS_H_
