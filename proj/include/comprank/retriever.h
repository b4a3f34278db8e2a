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

#ifndef COMPRANK_RETRIEVER_H_
#define COMPRANK_RETRIEVER_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "comprank/catalog.h"
#include "comprank/error.h"

namespace comprank {

struct Candidate {
  std::string id;
  double score = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// Retriever output for one query. Candidates are unique, exclude the query,
// and are ordered by descending score with ties broken by ascending id.
struct CandidateList {
  std::string query_id;
  std::vector<Candidate> candidates;
  std::string source;
};

// Sorts into CandidateList order.
void SortCandidates(std::vector<Candidate>& candidates);

class RetrievalError : public Error {
 public:
  using Error::Error;
};

struct ScoreWeights {
  double category = 1.0;
  double price = 1.0;
};

// Length of the common category prefix divided by the longer path length;
// 0 when both paths are empty. Symmetric.
double CategoryOverlap(const Item& a, const Item& b);

// 1 / (1 + |ln(p_a / p_b)|) when both prices are present and positive,
// otherwise 0.
double PriceProximity(const Item& a, const Item& b);

// Heuristic stand-in for a trained pairwise complement scorer.
double ScorePair(const Item& query, const Item& candidate,
                 const ScoreWeights& weights = {});

// Anything that turns a query into a ranked candidate list. Implementations
// must be safe to call concurrently for different queries.
class Retriever {
 public:
  virtual ~Retriever() = default;
  // Top-n candidates. Throws RetrievalError if the query cannot be served.
  virtual CandidateList Retrieve(const std::string& query_id,
                                 size_t n) const = 0;
  virtual const std::string& name() const = 0;
};

// Scores every catalog item against the query with ScorePair.
class HeuristicRetriever : public Retriever {
 public:
  struct Options {
    ScoreWeights weights;
    // Skip items already linked to the query in the graph.
    bool exclude_neighbors = true;
    std::string name = "heuristic";
  };

  // `graph` must outlive the retriever.
  explicit HeuristicRetriever(const ComplementGraph& graph);
  HeuristicRetriever(const ComplementGraph& graph, Options options);

  CandidateList Retrieve(const std::string& query_id,
                         size_t n) const override;
  const std::string& name() const override { return options_.name; }

 private:
  const ComplementGraph& graph_;
  Options options_;
};

// Serves candidate lists exported by an external model. The scores file holds
// one JSON object per line:
//   {"query": "<id>", "candidates": [["<id>", <score>], ...]}
class PrecomputedRetriever : public Retriever {
 public:
  // Loads and normalizes the whole file. Throws DataError naming the file
  // and line on malformed input.
  explicit PrecomputedRetriever(const std::filesystem::path& scores_path,
                                std::string name = "precomputed");

  CandidateList Retrieve(const std::string& query_id,
                         size_t n) const override;
  const std::string& name() const override { return name_; }

  size_t num_queries() const { return lists_.size(); }

 private:
  std::string name_;
  std::map<std::string, std::vector<Candidate>> lists_;
};

// One-shot form: loads the file and returns the list for one query.
CandidateList RetrievePrecomputed(const std::filesystem::path& scores_path,
                                  const std::string& query_id, size_t n);

}  // namespace comprank

#endif  // COMPRANK_RETRIEVER_H_
