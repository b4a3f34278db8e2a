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

#ifndef COMPRANK_EXPERIMENT_H_
#define COMPRANK_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "comprank/llm_client.h"
#include "comprank/metrics.h"
#include "comprank/pipeline.h"
#include "comprank/report.h"
#include "comprank/retriever.h"
#include "comprank/synth.h"
#include "json.hpp"

namespace comprank {

// One experiment: a dataset, a retriever, a pipeline configuration and an
// agent transport per stage. See README for the JSON key set.
struct RunConfig {
  // Either a dataset on disk or a synthetic one.
  std::optional<std::filesystem::path> items_path;
  std::optional<std::filesystem::path> edges_path;
  std::optional<SynthConfig> synth;
  std::string dataset_name;

  // "heuristic" or "precomputed".
  std::string retriever_type = "heuristic";
  std::optional<std::filesystem::path> scores_path;
  std::string retriever_name;
  ScoreWeights weights;
  bool exclude_train_neighbors = true;

  PipelineConfig pipeline = PipelineConfig::Fig1();

  // Mock spec ("identity", "reverse", "shuffle:<seed>", "oracle") or "llm".
  std::string diversity_agent = "identity";
  std::string accuracy_agent = "identity";
  std::optional<LlmConfig> llm;

  double holdout_fraction = 0.2;
  uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  // Defaults to on when any stage talks to an LLM endpoint.
  std::optional<bool> audit;
};

// Builds a config from its JSON form. Unknown keys are rejected.
RunConfig RunConfigFromJson(const nlohmann::json& json);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Throws ConfigError on contradictory or incomplete settings.
void ValidateRunConfig(const RunConfig& config);

SynthConfig SynthConfigFromJson(const nlohmann::json& json,
                                SynthConfig defaults = {});

struct RunOutputs {
  std::vector<PipelineResult> results;
  std::vector<MetricsRow> rows;
  std::vector<LiftRow> lifts;
};

// Split, retrieve, rerank, evaluate and write every output file into
// config.out_dir:
//   retrieval.jsonl  stages.jsonl  metrics.csv  metrics.json
//   lift.csv  lift.json  run.json  [audit.jsonl]
RunOutputs RunExperiment(const RunConfig& config);

// Generates a synthetic dataset into `dir`.
SynthDataset RunSynth(const SynthConfig& config,
                      const std::filesystem::path& dir);

// Merges run directories into a report under out_dir.
ReportTables RunReport(const std::vector<std::filesystem::path>& run_dirs,
                       const std::filesystem::path& out_dir);

}  // namespace comprank

#endif  // COMPRANK_EXPERIMENT_H_
