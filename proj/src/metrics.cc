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
#include <cctype>
#include <cmath>
#include <map>
#include <tuple>

namespace comprank {

double HitAtK(std::span<const std::string> order,
              const std::set<std::string>& ground_truth, size_t k) {
  const size_t depth = std::min(k, order.size());
  for (size_t i = 0; i < depth; ++i) {
    if (ground_truth.contains(order[i])) return 1.0;
  }
  return 0.0;
}

double NdcgAtK(std::span<const std::string> order,
               const std::set<std::string>& ground_truth, size_t k) {
  if (ground_truth.empty() || k == 0) return 0.0;
  const size_t depth = std::min(k, order.size());
  double dcg = 0.0;
  for (size_t i = 0; i < depth; ++i) {
    if (ground_truth.contains(order[i])) {
      dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
  }
  double ideal = 0.0;
  const size_t relevant = std::min(ground_truth.size(), k);
  for (size_t i = 0; i < relevant; ++i) {
    ideal += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg / ideal;
}

std::vector<std::string> Tokenize(std::string_view title) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : title) {
    const auto byte = static_cast<unsigned char>(c);
    if (byte < 0x80 && std::isalnum(byte)) {
      current += static_cast<char>(std::tolower(byte));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace {

std::map<std::string, size_t> CountTokens(
    std::span<const std::string> titles) {
  std::map<std::string, size_t> counts;
  for (const auto& title : titles) {
    for (auto& token : Tokenize(title)) ++counts[std::move(token)];
  }
  return counts;
}

}  // namespace

double EntropyAtK(std::span<const std::string> titles) {
  const auto counts = CountTokens(titles);
  size_t total = 0;
  for (const auto& [token, count] : counts) total += count;
  if (total == 0) return 0.0;
  double entropy = 0.0;
  for (const auto& [token, count] : counts) {
    const double p = static_cast<double>(count) / static_cast<double>(total);
    entropy -= p * std::log(p);
  }
  // A single distinct token yields -1 * log(1) = -0.
  return entropy == 0.0 ? 0.0 : entropy;
}

double VocabAtK(std::span<const std::string> titles) {
  return static_cast<double>(CountTokens(titles).size());
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kHit:
      return "hit";
    case Metric::kNdcg:
      return "ndcg";
    case Metric::kEntropy:
      return "entropy";
    case Metric::kVocab:
      return "vocab";
  }
  return {};
}

std::vector<QueryMetrics> EvaluateRankedList(
    std::span<const std::string> order,
    const std::set<std::string>& ground_truth, const ComplementGraph& catalog,
    std::span<const int> cutoffs) {
  std::vector<QueryMetrics> out;
  out.reserve(cutoffs.size());
  for (int k : cutoffs) {
    const size_t depth = std::min(static_cast<size_t>(k), order.size());
    std::vector<std::string> titles;
    titles.reserve(depth);
    for (size_t i = 0; i < depth; ++i) {
      titles.push_back(catalog.item(order[i]).title);
    }
    out.push_back({k, HitAtK(order, ground_truth, k),
                   NdcgAtK(order, ground_truth, k), EntropyAtK(titles),
                   VocabAtK(titles)});
  }
  return out;
}

double MetricsRow::value(Metric metric) const {
  switch (metric) {
    case Metric::kHit:
      return hit;
    case Metric::kNdcg:
      return ndcg;
    case Metric::kEntropy:
      return entropy;
    case Metric::kVocab:
      return vocab;
  }
  return 0.0;
}

std::vector<MetricsRow> Aggregate(
    std::span<const std::vector<QueryMetrics>> per_query,
    const std::string& retriever, Stage stage, const std::string& dataset,
    std::span<const int> cutoffs) {
  if (per_query.empty()) throw ConfigError("cannot aggregate zero queries");
  std::vector<MetricsRow> rows;
  const auto count = static_cast<double>(per_query.size());
  for (size_t c = 0; c < cutoffs.size(); ++c) {
    MetricsRow row{retriever, stage, dataset, cutoffs[c]};
    for (const auto& query : per_query) {
      if (query.size() != cutoffs.size() || query[c].k != cutoffs[c]) {
        throw ConfigError("per-query metrics do not match the cutoffs");
      }
      row.hit += query[c].hit;
      row.ndcg += query[c].ndcg;
      row.entropy += query[c].entropy;
      row.vocab += query[c].vocab;
    }
    row.hit /= count;
    row.ndcg /= count;
    row.entropy /= count;
    row.vocab /= count;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<double> LiftPercent(double enhanced, double base) {
  if (base == 0.0) return std::nullopt;
  return 100.0 * (enhanced - base) / base;
}

MetricLifts Lift(const MetricsRow& enhanced, const MetricsRow& base) {
  if (enhanced.dataset != base.dataset || enhanced.k != base.k) {
    throw ConfigError("lift needs rows of the same dataset and cutoff");
  }
  MetricLifts lifts;
  for (size_t m = 0; m < std::size(kAllMetrics); ++m) {
    lifts[m] = LiftPercent(enhanced.value(kAllMetrics[m]),
                           base.value(kAllMetrics[m]));
  }
  return lifts;
}

MeanStdErr LiftWithStdErr(std::span<const double> lifts) {
  if (lifts.empty()) throw ConfigError("no lifts to aggregate");
  const auto count = static_cast<double>(lifts.size());
  double sum = 0.0;
  for (double lift : lifts) sum += lift;
  MeanStdErr out;
  out.mean = sum / count;
  if (lifts.size() < 2) {
    out.degenerate = true;
    return out;
  }
  double squares = 0.0;
  for (double lift : lifts) squares += (lift - out.mean) * (lift - out.mean);
  out.std_err = std::sqrt(squares / (count - 1.0)) / std::sqrt(count);
  return out;
}

std::string_view ComparisonName(Comparison comparison) {
  switch (comparison) {
    case Comparison::kOverallVsBase:
      return "overall_vs_base";
    case Comparison::kDiversityVsBase:
      return "diversity_vs_base";
    case Comparison::kFinalVsDiversity:
      return "final_vs_diversity";
  }
  return {};
}

Stage EnhancedStage(Comparison comparison) {
  return comparison == Comparison::kDiversityVsBase ? Stage::kDiversity
                                                    : Stage::kDiversityAccuracy;
}

Stage BaselineStage(Comparison comparison) {
  return comparison == Comparison::kFinalVsDiversity ? Stage::kDiversity
                                                     : Stage::kBase;
}

std::vector<LiftRow> ComputeLiftRows(std::span<const MetricsRow> rows) {
  using Key = std::tuple<std::string, std::string, Stage, int>;
  std::map<Key, const MetricsRow*> index;
  std::map<std::string, std::set<std::string>> retrievers;
  std::map<std::string, std::set<int>> cutoffs;
  for (const auto& row : rows) {
    index[{row.dataset, row.retriever, row.stage, row.k}] = &row;
    retrievers[row.dataset].insert(row.retriever);
    cutoffs[row.dataset].insert(row.k);
  }

  std::vector<LiftRow> out;
  for (const auto& [dataset, names] : retrievers) {
    for (Comparison comparison : kAllComparisons) {
      for (int k : cutoffs[dataset]) {
        for (size_t m = 0; m < std::size(kAllMetrics); ++m) {
          std::vector<double> lifts;
          for (const auto& retriever : names) {
            const auto enhanced =
                index.find({dataset, retriever, EnhancedStage(comparison), k});
            const auto base =
                index.find({dataset, retriever, BaselineStage(comparison), k});
            if (enhanced == index.end() || base == index.end()) continue;
            if (auto lift = Lift(*enhanced->second, *base->second)[m]) {
              lifts.push_back(*lift);
            }
          }
          LiftRow row;
          row.metric = kAllMetrics[m];
          row.dataset = dataset;
          row.k = k;
          row.comparison = comparison;
          row.n_retrievers = lifts.size();
          if (!lifts.empty()) {
            const MeanStdErr summary = LiftWithStdErr(lifts);
            row.mean_lift_pct = summary.mean;
            if (!summary.degenerate) row.std_err = summary.std_err;
          }
          out.push_back(std::move(row));
        }
      }
    }
  }
  return out;
}

}  // namespace comprank
