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

#ifndef COMPRANK_PIPELINE_H_
#define COMPRANK_PIPELINE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "comprank/agent.h"
#include "comprank/catalog.h"
#include "comprank/retriever.h"

namespace comprank {

enum class Stage { kBase, kDiversity, kDiversityAccuracy };

inline constexpr Stage kAllStages[] = {Stage::kBase, Stage::kDiversity,
                                       Stage::kDiversityAccuracy};

std::string_view StageName(Stage stage);
// Throws ConfigError on an unknown name.
Stage ParseStageName(std::string_view name);

struct PipelineConfig {
  size_t n_div = 50;
  size_t n_acc = 25;
  std::vector<int> cutoffs = {1, 3, 5, 10};
  // On agent failure keep the input order and flag the list instead of
  // aborting the run.
  bool fallback_on_failure = true;
  size_t max_in_flight = 8;
  size_t max_prompt_candidates = kDefaultMaxCandidates;

  // 50 candidates to the diversity agent, 25 to the accuracy agent.
  static PipelineConfig Fig1();
  // 100 and 50.
  static PipelineConfig Fig2();
  // "fig1" or "fig2"; throws ConfigError otherwise.
  static PipelineConfig FromPreset(std::string_view preset);
};

// Throws ConfigError unless 1 <= n_acc <= n_div <= max_prompt_candidates,
// cutoffs are positive and unique, and max(cutoffs) <= n_acc.
void ValidatePipelineConfig(const PipelineConfig& config);

struct RankedList {
  std::string query_id;
  std::vector<std::string> order;
  Stage stage = Stage::kBase;
  // RepairFlag bits from parsing the agent's answer.
  uint8_t repairs = 0;
  // The agent failed and the input order was kept.
  bool failed = false;
  std::string error;
};

// Throws DataError on duplicate ids or when the query appears in the list.
void ValidateRankedList(const RankedList& list);

// Prompt and raw answer behind one agent stage.
struct StageTrace {
  Stage stage = Stage::kDiversity;
  std::string prompt;
  std::string response;
};

struct StageOutcome {
  RankedList list;
  StageTrace trace;
};

class PipelineError : public Error {
 public:
  PipelineError(const std::string& query_id, std::string_view stage,
                const std::string& message)
      : Error("query '" + query_id + "' stage " + std::string(stage) + ": " +
              message),
        query_id_(query_id) {}

  const std::string& query_id() const { return query_id_; }

 private:
  std::string query_id_;
};

// Prompts the agent with the candidates, parses its permutation and maps it
// back to item ids. The output is always a permutation of the input ids.
// AgentError propagates unless fallback_on_failure is set.
StageOutcome RerankStage(const Item& query,
                         std::span<const Item* const> candidates,
                         AgentKind kind, const Agent& agent, Stage tag,
                         bool fallback_on_failure = false,
                         size_t max_candidates = kDefaultMaxCandidates);

struct PipelineResult {
  QueryInstance query;
  CandidateList retrieved;
  RankedList base;
  RankedList diversity;
  RankedList final_list;
  std::vector<StageTrace> traces;

  const RankedList& list(Stage stage) const;
};

// Retrieve top n_div, diversity-rerank, keep the first n_acc and
// accuracy-rerank them.
PipelineResult RunPipeline(const QueryInstance& query,
                           const ComplementGraph& catalog,
                           const Retriever& retriever,
                           const Agent& diversity_agent,
                           const Agent& accuracy_agent,
                           const PipelineConfig& config);

// Runs queries concurrently, at most config.max_in_flight at a time. Results
// keep the input order. The first failure, in query order, is rethrown as a
// PipelineError.
std::vector<PipelineResult> RunPipelineBatch(
    std::span<const QueryInstance> queries, const ComplementGraph& catalog,
    const Retriever& retriever, const Agent& diversity_agent,
    const Agent& accuracy_agent, const PipelineConfig& config);

}  // namespace comprank

#endif  // COMPRANK_PIPELINE_H_
