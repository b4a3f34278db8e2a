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

// comprank: synthetic data generation, two-stage LLM reranking experiments
// and cross-retriever reports.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "comprank/error.h"
#include "comprank/experiment.h"

namespace {

struct RunFlags {
  std::string config;
  std::string preset;
  std::string retriever;
  std::string scores;
  std::string retriever_name;
  std::string mock;
  std::string endpoint;
  std::string model;
  std::string api_key_env;
  std::string items;
  std::string edges;
  std::string dataset_name;
  std::optional<uint64_t> seed;
  std::optional<double> holdout;
  std::optional<size_t> max_in_flight;
  std::string out;
};

comprank::RunConfig ResolveRunConfig(const RunFlags& flags) {
  comprank::RunConfig config = flags.config.empty()
                                   ? comprank::RunConfig{}
                                   : comprank::LoadRunConfig(flags.config);
  if (!flags.preset.empty()) {
    const auto preset = comprank::PipelineConfig::FromPreset(flags.preset);
    config.pipeline.n_div = preset.n_div;
    config.pipeline.n_acc = preset.n_acc;
  }
  if (!flags.retriever.empty()) config.retriever_type = flags.retriever;
  if (!flags.scores.empty()) config.scores_path = flags.scores;
  if (!flags.retriever_name.empty()) {
    config.retriever_name = flags.retriever_name;
  }
  if (!flags.items.empty() || !flags.edges.empty()) {
    config.items_path = flags.items;
    config.edges_path = flags.edges;
    config.synth.reset();
  }
  if (!flags.dataset_name.empty()) config.dataset_name = flags.dataset_name;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.holdout) config.holdout_fraction = *flags.holdout;
  if (flags.max_in_flight) config.pipeline.max_in_flight = *flags.max_in_flight;
  if (!flags.out.empty()) config.out_dir = flags.out;
  if (!flags.mock.empty() && !flags.endpoint.empty()) {
    throw comprank::ConfigError("--mock and --endpoint are exclusive");
  }
  if (!flags.mock.empty()) {
    config.diversity_agent = flags.mock;
    config.accuracy_agent = flags.mock;
  }
  if (!flags.endpoint.empty() || !flags.model.empty() ||
      !flags.api_key_env.empty()) {
    if (!config.llm) config.llm.emplace();
    if (!flags.endpoint.empty()) {
      config.llm->base_url = flags.endpoint;
      config.diversity_agent = "llm";
      config.accuracy_agent = "llm";
    }
    if (!flags.model.empty()) config.llm->model = flags.model;
    if (!flags.api_key_env.empty()) config.llm->api_key_env = flags.api_key_env;
  }
  if (!config.items_path && !config.edges_path && !config.synth) {
    comprank::SynthConfig synth;
    synth.seed = config.seed;
    config.synth = synth;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage LLM reranking for complementary recommendation"};
  app.require_subcommand(1);

  comprank::SynthConfig synth;
  std::string synth_out = "data";
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth_cmd->add_option("--items", synth.n_items, "Number of items");
  synth_cmd->add_option("--genres", synth.n_genres, "Number of genres");
  synth_cmd->add_option("--edges-per-item", synth.edges_per_item,
                        "Mean degree of the planted graph");
  synth_cmd->add_option("--cross-genre-ratio", synth.cross_genre_edge_ratio,
                        "Fraction of edges joining different genres");
  synth_cmd->add_option("--title-min", synth.title_tokens_min);
  synth_cmd->add_option("--title-max", synth.title_tokens_max);
  synth_cmd->add_option("--token-pool", synth.token_pool_per_genre,
                        "Distinct title tokens per genre");
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--out", synth_out, "Output directory");

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Run the reranking pipeline");
  run_cmd->add_option("--config", run.config, "JSON run configuration");
  run_cmd->add_option("--preset", run.preset, "fig1 (50/25) or fig2 (100/50)");
  run_cmd->add_option("--retriever", run.retriever, "heuristic|precomputed");
  run_cmd->add_option("--scores", run.scores, "Precomputed scores file");
  run_cmd->add_option("--retriever-name", run.retriever_name,
                      "Method name used in reports");
  run_cmd->add_option("--mock", run.mock,
                      "identity|reverse|shuffle:<seed>|oracle for both stages");
  run_cmd->add_option("--endpoint", run.endpoint,
                      "OpenAI-compatible base URL for both stages");
  run_cmd->add_option("--model", run.model, "Model name");
  run_cmd->add_option("--api-key-env", run.api_key_env,
                      "Environment variable holding the API key");
  run_cmd->add_option("--items", run.items, "Items file (JSON lines)");
  run_cmd->add_option("--edges", run.edges, "Edges file (JSON lines)");
  run_cmd->add_option("--dataset-name", run.dataset_name);
  run_cmd->add_option("--seed", run.seed, "Holdout split seed");
  run_cmd->add_option("--holdout", run.holdout, "Held-out edge fraction");
  run_cmd->add_option("--max-in-flight", run.max_in_flight,
                      "Concurrent queries");
  run_cmd->add_option("--out", run.out, "Output directory");

  std::vector<std::string> report_runs;
  std::string report_out = "report";
  auto* report_cmd =
      app.add_subcommand("report", "Merge run directories into one table");
  report_cmd->add_option("runs", report_runs, "Run directories")
      ->required()
      ->expected(1, -1);
  report_cmd->add_option("--out", report_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) {
      const auto dataset = comprank::RunSynth(synth, synth_out);
      std::cout << "wrote " << dataset.graph.num_items() << " items and "
                << dataset.graph.num_edges() << " edges to " << synth_out
                << "\n";
    } else if (*run_cmd) {
      const comprank::RunConfig config = ResolveRunConfig(run);
      const auto outputs = comprank::RunExperiment(config);
      std::cout << "evaluated " << outputs.results.size() << " queries; "
                << "outputs in " << config.out_dir.string() << "\n";
    } else if (*report_cmd) {
      std::vector<std::filesystem::path> dirs(report_runs.begin(),
                                              report_runs.end());
      const auto tables = comprank::RunReport(dirs, report_out);
      std::cout << "merged " << dirs.size() << " runs ("
                << tables.rows.size() << " metric rows) into " << report_out
                << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
