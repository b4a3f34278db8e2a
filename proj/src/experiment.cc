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

#include "comprank/experiment.h"

#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "comprank/mock_agent.h"
#include "comprank/permutation.h"

namespace comprank {
namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& object, std::string_view where,
                       std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (auto name : allowed) known = known || key == name;
    if (!known) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
void ReadIf(const json& object, const char* key, T& target) {
  if (const auto it = object.find(key); it != object.end()) {
    target = it->get<T>();
  }
}

LlmConfig LlmConfigFromJson(const json& value) {
  RejectUnknownKeys(value, "llm",
                    {"base_url", "model", "api_key_env", "temperature",
                     "max_retries", "timeout_ms", "initial_backoff_ms"});
  LlmConfig config;
  ReadIf(value, "base_url", config.base_url);
  ReadIf(value, "model", config.model);
  ReadIf(value, "api_key_env", config.api_key_env);
  ReadIf(value, "temperature", config.temperature);
  ReadIf(value, "max_retries", config.max_retries);
  if (value.contains("timeout_ms")) {
    config.timeout = std::chrono::milliseconds(value["timeout_ms"].get<int64_t>());
  }
  if (value.contains("initial_backoff_ms")) {
    config.initial_backoff =
        std::chrono::milliseconds(value["initial_backoff_ms"].get<int64_t>());
  }
  return config;
}

std::string DefaultDatasetName(const RunConfig& config) {
  if (config.synth) return "synthetic";
  const auto parent = config.items_path->parent_path().filename().string();
  return parent.empty() ? config.items_path->stem().string() : parent;
}

bool UsesLlm(const RunConfig& config) {
  return config.diversity_agent == "llm" || config.accuracy_agent == "llm";
}

std::unique_ptr<Agent> MakeAgent(
    const std::string& spec, const RunConfig& config,
    const std::map<std::string, std::set<std::string>>& ground_truth) {
  if (spec == "llm") return std::make_unique<ChatCompletionAgent>(*config.llm);
  if (spec == "oracle") {
    return std::make_unique<MockAgent>(MockAgent::Oracle(ground_truth));
  }
  return std::make_unique<MockAgent>(MockAgent::FromSpec(spec));
}

std::string JsonLines(const std::vector<json>& records) {
  std::string text;
  for (const auto& record : records) text += record.dump() + "\n";
  return text;
}

}  // namespace

SynthConfig SynthConfigFromJson(const json& value, SynthConfig config) {
  RejectUnknownKeys(value, "synth",
                    {"n_items", "n_genres", "edges_per_item",
                     "title_tokens_min", "title_tokens_max",
                     "token_pool_per_genre", "cross_genre_edge_ratio", "seed"});
  ReadIf(value, "n_items", config.n_items);
  ReadIf(value, "n_genres", config.n_genres);
  ReadIf(value, "edges_per_item", config.edges_per_item);
  ReadIf(value, "title_tokens_min", config.title_tokens_min);
  ReadIf(value, "title_tokens_max", config.title_tokens_max);
  ReadIf(value, "token_pool_per_genre", config.token_pool_per_genre);
  ReadIf(value, "cross_genre_edge_ratio", config.cross_genre_edge_ratio);
  ReadIf(value, "seed", config.seed);
  return config;
}

RunConfig RunConfigFromJson(const json& value) {
  RejectUnknownKeys(
      value, "run config",
      {"dataset", "synth", "retriever", "preset", "n_div", "n_acc", "cutoffs",
       "max_in_flight", "fallback_on_failure", "agents", "llm",
       "holdout_fraction", "seed", "out", "audit"});
  RunConfig config;
  try {
    if (value.contains("dataset")) {
      const json& dataset = value["dataset"];
      RejectUnknownKeys(dataset, "dataset", {"name", "items", "edges"});
      if (dataset.contains("items")) {
        config.items_path = dataset["items"].get<std::string>();
      }
      if (dataset.contains("edges")) {
        config.edges_path = dataset["edges"].get<std::string>();
      }
      ReadIf(dataset, "name", config.dataset_name);
    }
    ReadIf(value, "seed", config.seed);
    if (value.contains("synth")) {
      SynthConfig defaults;
      defaults.seed = config.seed;
      config.synth = SynthConfigFromJson(value["synth"], defaults);
    }
    if (value.contains("retriever")) {
      const json& retriever = value["retriever"];
      RejectUnknownKeys(retriever, "retriever",
                        {"type", "scores", "name", "exclude_train_neighbors",
                         "category_weight", "price_weight"});
      ReadIf(retriever, "type", config.retriever_type);
      if (retriever.contains("scores")) {
        config.scores_path = retriever["scores"].get<std::string>();
      }
      ReadIf(retriever, "name", config.retriever_name);
      ReadIf(retriever, "exclude_train_neighbors",
             config.exclude_train_neighbors);
      ReadIf(retriever, "category_weight", config.weights.category);
      ReadIf(retriever, "price_weight", config.weights.price);
    }
    if (value.contains("preset")) {
      config.pipeline =
          PipelineConfig::FromPreset(value["preset"].get<std::string>());
    }
    ReadIf(value, "n_div", config.pipeline.n_div);
    ReadIf(value, "n_acc", config.pipeline.n_acc);
    ReadIf(value, "cutoffs", config.pipeline.cutoffs);
    ReadIf(value, "max_in_flight", config.pipeline.max_in_flight);
    ReadIf(value, "fallback_on_failure", config.pipeline.fallback_on_failure);
    if (value.contains("agents")) {
      const json& agents = value["agents"];
      RejectUnknownKeys(agents, "agents", {"diversity", "accuracy"});
      ReadIf(agents, "diversity", config.diversity_agent);
      ReadIf(agents, "accuracy", config.accuracy_agent);
    }
    if (value.contains("llm")) config.llm = LlmConfigFromJson(value["llm"]);
    ReadIf(value, "holdout_fraction", config.holdout_fraction);
    if (value.contains("out")) config.out_dir = value["out"].get<std::string>();
    if (value.contains("audit")) config.audit = value["audit"].get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid run config: ") + e.what());
  }
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  const json value = json::parse(in, nullptr, false);
  if (value.is_discarded()) {
    throw ConfigError("config file " + path.string() + " is not valid JSON");
  }
  return RunConfigFromJson(value);
}

void ValidateRunConfig(const RunConfig& config) {
  const bool has_files = config.items_path || config.edges_path;
  if (has_files == config.synth.has_value()) {
    throw ConfigError(
        "specify exactly one dataset source: items/edges files or synth");
  }
  if (has_files && !(config.items_path && config.edges_path)) {
    throw ConfigError("a dataset on disk needs both items and edges files");
  }
  if (config.synth) ValidateSynthConfig(*config.synth);
  if (config.retriever_type == "heuristic") {
    if (config.scores_path) {
      throw ConfigError("a scores file only applies to the precomputed "
                        "retriever");
    }
  } else if (config.retriever_type == "precomputed") {
    if (!config.scores_path) {
      throw ConfigError("the precomputed retriever needs a scores file");
    }
  } else {
    throw ConfigError("unknown retriever '" + config.retriever_type +
                      "' (expected heuristic or precomputed)");
  }
  ValidatePipelineConfig(config.pipeline);
  for (const auto* spec : {&config.diversity_agent, &config.accuracy_agent}) {
    if (*spec == "llm") {
      if (!config.llm) throw ConfigError("agent 'llm' needs an llm section");
      ValidateLlmConfig(*config.llm);
    } else if (*spec != "oracle") {
      MockAgent::FromSpec(*spec);
    }
  }
  if (!(config.holdout_fraction > 0 && config.holdout_fraction < 1)) {
    throw ConfigError("holdout_fraction must lie in (0, 1)");
  }
}

SynthDataset RunSynth(const SynthConfig& config,
                      const std::filesystem::path& dir) {
  SynthDataset dataset = GenerateSynthetic(config);
  WriteSynthDataset(dataset, dir);
  return dataset;
}

RunOutputs RunExperiment(const RunConfig& config) {
  ValidateRunConfig(config);
  const ComplementGraph graph =
      config.synth ? GenerateSynthetic(*config.synth).graph
                   : LoadCatalog(*config.items_path, *config.edges_path);
  const std::string dataset =
      config.dataset_name.empty() ? DefaultDatasetName(config)
                                  : config.dataset_name;
  const std::string retriever_name = config.retriever_name.empty()
                                         ? config.retriever_type
                                         : config.retriever_name;

  const HoldoutSplit split =
      SplitHoldout(graph, config.holdout_fraction, config.seed);

  std::unique_ptr<Retriever> retriever;
  if (config.retriever_type == "heuristic") {
    retriever = std::make_unique<HeuristicRetriever>(
        split.train,
        HeuristicRetriever::Options{config.weights,
                                    config.exclude_train_neighbors,
                                    retriever_name});
  } else {
    retriever = std::make_unique<PrecomputedRetriever>(*config.scores_path,
                                                       retriever_name);
  }

  std::map<std::string, std::set<std::string>> ground_truth;
  for (const auto& query : split.queries) {
    ground_truth[query.query_id] = query.ground_truth;
  }
  const auto diversity_agent =
      MakeAgent(config.diversity_agent, config, ground_truth);
  const auto accuracy_agent =
      MakeAgent(config.accuracy_agent, config, ground_truth);

  RunOutputs outputs;
  outputs.results =
      RunPipelineBatch(split.queries, graph, *retriever, *diversity_agent,
                       *accuracy_agent, config.pipeline);

  const auto& cutoffs = config.pipeline.cutoffs;
  for (Stage stage : kAllStages) {
    std::vector<std::vector<QueryMetrics>> per_query;
    per_query.reserve(outputs.results.size());
    for (const auto& result : outputs.results) {
      per_query.push_back(EvaluateRankedList(
          result.list(stage).order, result.query.ground_truth, graph, cutoffs));
    }
    auto rows = Aggregate(per_query, retriever_name, stage, dataset, cutoffs);
    outputs.rows.insert(outputs.rows.end(), rows.begin(), rows.end());
  }
  outputs.lifts = ComputeLiftRows(outputs.rows);

  // Outputs are written from this thread only, in query order.
  std::vector<json> retrieval, stages, audit;
  size_t failed_stages = 0;
  for (const auto& result : outputs.results) {
    json candidates = json::array();
    for (const auto& candidate : result.retrieved.candidates) {
      candidates.push_back({candidate.id, candidate.score});
    }
    retrieval.push_back({{"query", result.query.query_id},
                         {"ground_truth", result.query.ground_truth},
                         {"candidates", std::move(candidates)}});
    for (Stage stage : kAllStages) {
      const RankedList& list = result.list(stage);
      failed_stages += list.failed ? 1 : 0;
      stages.push_back(StageRecordToJson(list));
    }
    for (const auto& trace : result.traces) {
      const RankedList& list = result.list(trace.stage);
      audit.push_back({{"query", result.query.query_id},
                       {"stage", StageName(trace.stage)},
                       {"prompt", trace.prompt},
                       {"response", trace.response},
                       {"repairs", RepairFlagNames(list.repairs)},
                       {"failed", list.failed}});
    }
  }

  const auto& dir = config.out_dir;
  std::filesystem::create_directories(dir);
  WriteTextFile(dir / "retrieval.jsonl", JsonLines(retrieval));
  WriteTextFile(dir / "stages.jsonl", JsonLines(stages));
  std::ostringstream metrics_csv, lift_csv;
  WriteMetricsCsv(outputs.rows, metrics_csv);
  WriteLiftCsv(outputs.lifts, lift_csv);
  WriteTextFile(dir / "metrics.csv", metrics_csv.str());
  WriteTextFile(dir / "lift.csv", lift_csv.str());
  WriteTextFile(dir / "metrics.json",
                MetricsToJson(outputs.rows).dump(2) + "\n");
  WriteTextFile(dir / "lift.json", LiftToJson(outputs.lifts).dump(2) + "\n");
  const json run = {{"dataset", dataset},
                    {"retriever", retriever_name},
                    {"cutoffs", cutoffs},
                    {"n_div", config.pipeline.n_div},
                    {"n_acc", config.pipeline.n_acc},
                    {"n_queries", outputs.results.size()},
                    {"holdout_fraction", config.holdout_fraction},
                    {"seed", config.seed},
                    {"diversity_agent", config.diversity_agent},
                    {"accuracy_agent", config.accuracy_agent},
                    {"failed_stages", failed_stages}};
  WriteTextFile(dir / "run.json", run.dump(2) + "\n");
  if (config.audit.value_or(UsesLlm(config))) {
    WriteTextFile(dir / "audit.jsonl", JsonLines(audit));
  }
  return outputs;
}

ReportTables RunReport(const std::vector<std::filesystem::path>& run_dirs,
                       const std::filesystem::path& out_dir) {
  std::vector<RunSummary> runs;
  for (const auto& dir : run_dirs) runs.push_back(LoadRunSummary(dir));
  ReportTables tables = MergeRuns(runs);
  WriteReport(tables, out_dir);
  return tables;
}

}  // namespace comprank
