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

#include "comprank/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <set>
#include <thread>

#include "comprank/permutation.h"

namespace comprank {

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kBase:
      return "base";
    case Stage::kDiversity:
      return "diversity";
    case Stage::kDiversityAccuracy:
      return "diversity_accuracy";
  }
  return {};
}

Stage ParseStageName(std::string_view name) {
  for (Stage stage : kAllStages) {
    if (StageName(stage) == name) return stage;
  }
  throw ConfigError("unknown stage '" + std::string(name) + "'");
}

PipelineConfig PipelineConfig::Fig1() { return PipelineConfig{}; }

PipelineConfig PipelineConfig::Fig2() {
  PipelineConfig config;
  config.n_div = 100;
  config.n_acc = 50;
  return config;
}

PipelineConfig PipelineConfig::FromPreset(std::string_view preset) {
  if (preset == "fig1") return Fig1();
  if (preset == "fig2") return Fig2();
  throw ConfigError("unknown preset '" + std::string(preset) +
                    "' (expected fig1 or fig2)");
}

void ValidatePipelineConfig(const PipelineConfig& config) {
  if (config.n_acc < 1) throw ConfigError("n_acc must be positive");
  if (config.n_acc > config.n_div) {
    throw ConfigError("n_acc (" + std::to_string(config.n_acc) +
                      ") exceeds n_div (" + std::to_string(config.n_div) + ")");
  }
  if (config.n_div > config.max_prompt_candidates) {
    throw ConfigError("n_div exceeds the prompt candidate limit of " +
                      std::to_string(config.max_prompt_candidates));
  }
  if (config.cutoffs.empty()) throw ConfigError("no cutoffs configured");
  std::set<int> unique;
  for (int k : config.cutoffs) {
    if (k < 1) throw ConfigError("cutoffs must be positive");
    if (!unique.insert(k).second) {
      throw ConfigError("duplicate cutoff " + std::to_string(k));
    }
    if (static_cast<size_t>(k) > config.n_acc) {
      throw ConfigError("cutoff " + std::to_string(k) + " exceeds n_acc (" +
                        std::to_string(config.n_acc) + ")");
    }
  }
  if (config.max_in_flight < 1) {
    throw ConfigError("max_in_flight must be positive");
  }
}

void ValidateRankedList(const RankedList& list) {
  std::set<std::string_view> seen;
  for (const auto& id : list.order) {
    if (id == list.query_id) {
      throw DataError("ranked list for '" + list.query_id +
                      "' contains the query itself");
    }
    if (!seen.insert(id).second) {
      throw DataError("ranked list for '" + list.query_id +
                      "' repeats item '" + id + "'");
    }
  }
}

StageOutcome RerankStage(const Item& query,
                         std::span<const Item* const> candidates,
                         AgentKind kind, const Agent& agent, Stage tag,
                         bool fallback_on_failure, size_t max_candidates) {
  const PromptBundle prompt =
      BuildPrompt(query, candidates, kind, max_candidates);
  StageOutcome outcome;
  outcome.list.query_id = query.id;
  outcome.list.stage = tag;
  outcome.trace.stage = tag;
  outcome.trace.prompt = prompt.text;
  try {
    outcome.trace.response = agent.Complete(prompt);
  } catch (const AgentError& e) {
    if (!fallback_on_failure) throw;
    outcome.list.failed = true;
    outcome.list.error = e.what();
    outcome.list.order = prompt.index_to_id;
    return outcome;
  }
  const ParsedPermutation parsed =
      ParsePermutation(outcome.trace.response, prompt.index_to_id.size());
  outcome.list.repairs = parsed.repairs;
  outcome.list.order.reserve(parsed.order.size());
  for (size_t local : parsed.order) {
    outcome.list.order.push_back(prompt.index_to_id[local]);
  }
  return outcome;
}

const RankedList& PipelineResult::list(Stage stage) const {
  switch (stage) {
    case Stage::kBase:
      return base;
    case Stage::kDiversity:
      return diversity;
    case Stage::kDiversityAccuracy:
      return final_list;
  }
  return base;
}

PipelineResult RunPipeline(const QueryInstance& query,
                           const ComplementGraph& catalog,
                           const Retriever& retriever,
                           const Agent& diversity_agent,
                           const Agent& accuracy_agent,
                           const PipelineConfig& config) {
  PipelineResult result;
  result.query = query;

  const Item* query_item = nullptr;
  std::vector<const Item*> candidates;
  try {
    query_item = &catalog.item(query.query_id);
    result.retrieved = retriever.Retrieve(query.query_id, config.n_div);
    for (const auto& candidate : result.retrieved.candidates) {
      candidates.push_back(&catalog.item(candidate.id));
      result.base.order.push_back(candidate.id);
    }
    if (candidates.empty()) {
      throw RetrievalError("retriever returned no candidates");
    }
  } catch (const Error& e) {
    throw PipelineError(query.query_id, "retrieval", e.what());
  }
  result.base.query_id = query.query_id;
  result.base.stage = Stage::kBase;

  auto run_stage = [&](std::span<const Item* const> input, AgentKind kind,
                       const Agent& agent, Stage tag) {
    try {
      StageOutcome outcome =
          RerankStage(*query_item, input, kind, agent, tag,
                      config.fallback_on_failure,
                      config.max_prompt_candidates);
      result.traces.push_back(std::move(outcome.trace));
      return std::move(outcome.list);
    } catch (const Error& e) {
      throw PipelineError(query.query_id, StageName(tag), e.what());
    }
  };

  result.diversity = run_stage(candidates, AgentKind::kDiversity,
                               diversity_agent, Stage::kDiversity);

  // Only the head of the diversified list reaches the accuracy agent.
  std::vector<const Item*> head;
  const size_t keep = std::min(config.n_acc, result.diversity.order.size());
  for (size_t i = 0; i < keep; ++i) {
    head.push_back(&catalog.item(result.diversity.order[i]));
  }
  result.final_list = run_stage(head, AgentKind::kAccuracy, accuracy_agent,
                                Stage::kDiversityAccuracy);
  return result;
}

std::vector<PipelineResult> RunPipelineBatch(
    std::span<const QueryInstance> queries, const ComplementGraph& catalog,
    const Retriever& retriever, const Agent& diversity_agent,
    const Agent& accuracy_agent, const PipelineConfig& config) {
  ValidatePipelineConfig(config);
  std::vector<std::optional<PipelineResult>> slots(queries.size());
  std::vector<std::exception_ptr> errors(queries.size());
  std::atomic<size_t> next{0};

  auto work = [&] {
    for (size_t i = next.fetch_add(1); i < queries.size();
         i = next.fetch_add(1)) {
      try {
        slots[i] = RunPipeline(queries[i], catalog, retriever,
                               diversity_agent, accuracy_agent, config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t workers = std::min(config.max_in_flight, queries.size());
  {
    std::vector<std::jthread> threads;
    for (size_t w = 1; w < workers; ++w) threads.emplace_back(work);
    work();
  }

  std::vector<PipelineResult> results;
  results.reserve(queries.size());
  for (size_t i = 0; i < queries.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    results.push_back(std::move(*slots[i]));
  }
  return results;
}

}  // namespace comprank
