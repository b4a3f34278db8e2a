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

#include "comprank/retriever.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"

namespace comprank {
namespace {

bool CandidateBefore(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id < b.id;
}

}  // namespace

void SortCandidates(std::vector<Candidate>& candidates) {
  std::sort(candidates.begin(), candidates.end(), CandidateBefore);
}

double CategoryOverlap(const Item& a, const Item& b) {
  const size_t longest = std::max(a.categories.size(), b.categories.size());
  if (longest == 0) return 0.0;
  const auto [a_end, b_end] = std::mismatch(
      a.categories.begin(), a.categories.end(), b.categories.begin(),
      b.categories.end());
  const auto common = static_cast<double>(a_end - a.categories.begin());
  return common / static_cast<double>(longest);
}

double PriceProximity(const Item& a, const Item& b) {
  if (!a.price || !b.price || *a.price <= 0 || *b.price <= 0) return 0.0;
  return 1.0 / (1.0 + std::abs(std::log(*a.price / *b.price)));
}

double ScorePair(const Item& query, const Item& candidate,
                 const ScoreWeights& weights) {
  return weights.category * CategoryOverlap(query, candidate) +
         weights.price * PriceProximity(query, candidate);
}

HeuristicRetriever::HeuristicRetriever(const ComplementGraph& graph)
    : HeuristicRetriever(graph, Options{}) {}

HeuristicRetriever::HeuristicRetriever(const ComplementGraph& graph,
                                       Options options)
    : graph_(graph), options_(std::move(options)) {}

CandidateList HeuristicRetriever::Retrieve(const std::string& query_id,
                                           size_t n) const {
  if (n == 0) throw RetrievalError("retrieval depth must be positive");
  if (!graph_.HasItem(query_id)) {
    throw RetrievalError("unknown query id '" + query_id + "'");
  }
  const Item& query = graph_.item(query_id);
  const auto& neighbors = graph_.Neighbors(query_id);

  CandidateList list{query_id, {}, options_.name};
  list.candidates.reserve(graph_.num_items());
  for (const auto& [id, item] : graph_.items()) {
    if (id == query_id) continue;
    if (options_.exclude_neighbors && neighbors.contains(id)) continue;
    list.candidates.push_back({id, ScorePair(query, item, options_.weights)});
  }
  const size_t keep = std::min(n, list.candidates.size());
  std::partial_sort(list.candidates.begin(), list.candidates.begin() + keep,
                    list.candidates.end(), CandidateBefore);
  list.candidates.resize(keep);
  return list;
}

PrecomputedRetriever::PrecomputedRetriever(
    const std::filesystem::path& scores_path, std::string name)
    : name_(std::move(name)) {
  using nlohmann::json;
  std::ifstream in(scores_path);
  if (!in) {
    throw DataError("cannot open scores file " + scores_path.string());
  }
  const std::string file = scores_path.string();
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& message) {
      throw DataError(file + " line " + std::to_string(line_number) + ": " +
                      message);
    };
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object() || !record.contains("query") ||
        !record["query"].is_string() || !record.contains("candidates") ||
        !record["candidates"].is_array()) {
      fail("expected {\"query\": id, \"candidates\": [[id, score], ...]}");
    }
    const auto query = record["query"].get<std::string>();
    if (lists_.contains(query)) fail("duplicate query '" + query + "'");
    std::vector<Candidate> candidates;
    std::set<std::string> seen;
    for (const auto& entry : record["candidates"]) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
          !entry[1].is_number()) {
        fail("candidate entries must be [id, score]");
      }
      Candidate candidate{entry[0].get<std::string>(), entry[1].get<double>()};
      if (!std::isfinite(candidate.score)) fail("non-finite score");
      if (candidate.id == query) fail("query lists itself as a candidate");
      if (!seen.insert(candidate.id).second) {
        fail("duplicate candidate '" + candidate.id + "'");
      }
      candidates.push_back(std::move(candidate));
    }
    SortCandidates(candidates);
    lists_.emplace(query, std::move(candidates));
  }
}

CandidateList PrecomputedRetriever::Retrieve(const std::string& query_id,
                                             size_t n) const {
  if (n == 0) throw RetrievalError("retrieval depth must be positive");
  const auto it = lists_.find(query_id);
  if (it == lists_.end()) {
    throw RetrievalError("query '" + query_id + "' not found in scores file");
  }
  const size_t keep = std::min(n, it->second.size());
  return {query_id,
          std::vector<Candidate>(it->second.begin(), it->second.begin() + keep),
          name_};
}

CandidateList RetrievePrecomputed(const std::filesystem::path& scores_path,
                                  const std::string& query_id, size_t n) {
  return PrecomputedRetriever(scores_path).Retrieve(query_id, n);
}

}  // namespace comprank
