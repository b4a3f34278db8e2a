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

#include <atomic>
#include <cstdlib>
#include <thread>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "comprank/report.h"
#include "gtest/gtest.h"
#include "httplib.h"

namespace comprank {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("comprank_exp_" + std::string(::testing::UnitTest::GetInstance()
                                               ->current_test_info()
                                               ->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  RunConfig SynthRun(const std::string& mock, const std::string& out) {
    RunConfig config;
    SynthConfig synth;
    synth.n_items = 500;
    synth.n_genres = 5;
    synth.seed = 3;
    config.synth = synth;
    config.diversity_agent = mock;
    config.accuracy_agent = mock;
    config.seed = 5;
    config.out_dir = root_ / out;
    return config;
  }

  fs::path root_;
};

TEST_F(ExperimentTest, IdentityMocksGiveZeroLift) {
  const RunOutputs outputs = RunExperiment(SynthRun("identity", "run"));
  ASSERT_FALSE(outputs.lifts.empty());
  for (const auto& lift : outputs.lifts) {
    // Absent only where the baseline metric is zero.
    if (lift.mean_lift_pct) EXPECT_EQ(*lift.mean_lift_pct, 0.0);
  }
  const std::string csv = ReadFile(root_ / "run" / "lift.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    EXPECT_TRUE(line.find(",0.000000,") != std::string::npos ||
                line.find("base,,") != std::string::npos)
        << line;
  }
}

TEST_F(ExperimentTest, OutputsAreByteIdenticalAcrossRuns) {
  RunExperiment(SynthRun("shuffle:7", "a"));
  RunConfig again = SynthRun("shuffle:7", "b");
  again.pipeline.max_in_flight = 3;
  RunExperiment(again);
  for (const char* name : {"metrics.csv", "lift.csv", "stages.jsonl",
                           "retrieval.jsonl", "metrics.json"}) {
    EXPECT_EQ(ReadFile(root_ / "a" / name), ReadFile(root_ / "b" / name))
        << name;
  }
  EXPECT_FALSE(fs::exists(root_ / "a" / "audit.jsonl"));
}

TEST_F(ExperimentTest, StageRecordsReparseAndSatisfyInvariants) {
  RunConfig config = SynthRun("reverse", "run");
  config.audit = true;
  const RunOutputs outputs = RunExperiment(config);
  std::ifstream in(root_ / "run" / "stages.jsonl");
  size_t count = 0;
  for (std::string line; std::getline(in, line); ++count) {
    const RankedList list = StageRecordFromJson(json::parse(line));
    ValidateRankedList(list);
    const size_t expected = list.stage == Stage::kDiversityAccuracy ? 25 : 50;
    EXPECT_EQ(list.order.size(), expected);
  }
  EXPECT_EQ(count, 3 * outputs.results.size());
  std::ifstream audit(root_ / "run" / "audit.jsonl");
  std::string first;
  ASSERT_TRUE(std::getline(audit, first));
  const json record = json::parse(first);
  EXPECT_NE(record["prompt"].get<std::string>().find("diversity aspect"),
            std::string::npos);
  EXPECT_EQ(record["stage"], "diversity");
}

TEST_F(ExperimentTest, MissingScoresFileIsNamed) {
  RunConfig config = SynthRun("identity", "run");
  config.retriever_type = "precomputed";
  config.scores_path = root_ / "nope.jsonl";
  try {
    RunExperiment(config);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("nope.jsonl"), std::string::npos);
  }
}

TEST_F(ExperimentTest, PrecomputedRetrieverDrivesTheRun) {
  // Export heuristic scores for every item, then rerun from the file.
  RunConfig heuristic = SynthRun("identity", "heuristic");
  heuristic.exclude_train_neighbors = false;
  const RunOutputs reference = RunExperiment(heuristic);
  {
    std::ofstream scores(root_ / "scores.jsonl");
    for (const auto& result : reference.results) {
      json candidates = json::array();
      for (const auto& c : result.retrieved.candidates) {
        candidates.push_back({c.id, c.score});
      }
      scores << json{{"query", result.query.query_id},
                     {"candidates", candidates}}
                    .dump()
             << "\n";
    }
  }
  RunConfig precomputed = SynthRun("identity", "precomputed");
  precomputed.retriever_type = "precomputed";
  precomputed.scores_path = root_ / "scores.jsonl";
  precomputed.retriever_name = "heuristic";
  RunExperiment(precomputed);
  EXPECT_EQ(ReadFile(root_ / "heuristic" / "metrics.csv"),
            ReadFile(root_ / "precomputed" / "metrics.csv"));
}

TEST_F(ExperimentTest, ReportMergesRetrieversIntoNineMethods) {
  std::vector<fs::path> dirs;
  const double weights[3][2] = {{1, 1}, {1, 0.2}, {0.3, 1}};
  for (int r = 0; r < 3; ++r) {
    RunConfig config = SynthRun("shuffle:1", "r" + std::to_string(r));
    config.retriever_name = "retriever" + std::to_string(r);
    config.weights = {weights[r][0], weights[r][1]};
    RunExperiment(config);
    dirs.push_back(config.out_dir);
  }
  const ReportTables tables = RunReport(dirs, root_ / "report");
  EXPECT_EQ(tables.rows.size(), 9 * 4);
  EXPECT_EQ(tables.lifts.size(), 3 * 4 * 4);
  for (const auto& lift : tables.lifts) {
    if (lift.n_retrievers >= 2) EXPECT_TRUE(lift.std_err.has_value());
  }
  std::istringstream table(ReadFile(root_ / "report" / "table.csv"));
  std::string header;
  std::getline(table, header);
  EXPECT_EQ(header,
            "method,stage,K,synthetic.hit,synthetic.ndcg,synthetic.entropy,"
            "synthetic.vocab");
  size_t body = 0;
  for (std::string line; std::getline(table, line);) ++body;
  EXPECT_EQ(body, 36);
}

TEST_F(ExperimentTest, SingleRunReportLeavesStdErrEmpty) {
  RunConfig config = SynthRun("shuffle:2", "only");
  RunExperiment(config);
  const ReportTables tables = RunReport({config.out_dir}, root_ / "report");
  for (const auto& lift : tables.lifts) EXPECT_FALSE(lift.std_err.has_value());
  std::istringstream lift(ReadFile(root_ / "report" / "lift.csv"));
  std::string line;
  std::getline(lift, line);
  while (std::getline(lift, line)) {
    // dataset,K,metric,comparison,mean_lift_pct,std_err,n_retrievers
    std::vector<std::string> cells;
    std::istringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) {
      cells.push_back(cell);
    }
    ASSERT_EQ(cells.size(), 7) << line;
    EXPECT_EQ(cells[5], "") << line;
  }
}

TEST_F(ExperimentTest, ReportRejectsMismatchedRuns) {
  RunConfig a = SynthRun("identity", "a");
  RunExperiment(a);
  RunConfig b = SynthRun("identity", "b");
  b.retriever_name = "other";
  b.pipeline.cutoffs = {1, 5};
  RunExperiment(b);
  EXPECT_THROW(RunReport({a.out_dir, b.out_dir}, root_ / "report"), DataError);
  EXPECT_THROW(RunReport({a.out_dir, a.out_dir}, root_ / "report"), DataError);
  RunConfig c = SynthRun("identity", "c");
  c.dataset_name = "second";
  RunExperiment(c);
  // "synthetic" is covered by two retrievers, "second" by one.
  RunConfig d = SynthRun("identity", "d");
  d.retriever_name = "extra";
  RunExperiment(d);
  EXPECT_THROW(RunReport({a.out_dir, c.out_dir, d.out_dir}, root_ / "report"),
               DataError);
  EXPECT_THROW(RunReport({root_ / "missing"}, root_ / "report"), DataError);
}

TEST_F(ExperimentTest, ChatEndpointRunWritesAuditLog) {
  // Answers every prompt by reversing its candidates; fails the first call.
  httplib::Server server;
  std::atomic<int> calls{0};
  server.Post("/v1/chat/completions",
              [&](const httplib::Request& req, httplib::Response& res) {
                if (calls++ == 0) {
                  res.status = 502;
                  return;
                }
                const std::string prompt =
                    json::parse(req.body)["messages"][0]["content"];
                size_t n = 0;
                while (prompt.find("ID:" + std::to_string(n) + " ") !=
                       std::string::npos) {
                  ++n;
                }
                std::string answer = "[";
                for (size_t i = n; i-- > 0;) {
                  answer += std::to_string(i) + (i > 0 ? ", " : "]");
                }
                res.set_content(
                    json{{"choices", {{{"message", {{"content", answer}}}}}}}
                        .dump(),
                    "application/json");
              });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  RunConfig config = SynthRun("llm", "llm");
  config.synth->n_items = 120;
  config.llm = LlmConfig{};
  config.llm->base_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
  config.llm->model = "fake";
  config.llm->initial_backoff = std::chrono::milliseconds(1);
  config.pipeline.max_in_flight = 4;
  const RunOutputs llm = RunExperiment(config);
  server.stop();
  thread.join();

  RunConfig reference = SynthRun("reverse", "reverse");
  reference.synth->n_items = 120;
  const RunOutputs expected = RunExperiment(reference);
  ASSERT_EQ(llm.results.size(), expected.results.size());
  for (size_t i = 0; i < llm.results.size(); ++i) {
    EXPECT_EQ(llm.results[i].final_list.order,
              expected.results[i].final_list.order);
    EXPECT_FALSE(llm.results[i].diversity.failed);
  }
  EXPECT_EQ(calls.load(), 2 * static_cast<int>(llm.results.size()) + 1);
  const std::string audit = ReadFile(root_ / "llm" / "audit.jsonl");
  EXPECT_NE(audit.find("accuracy aspect"), std::string::npos);
}

TEST(RunConfigTest, ParsesDocumentedKeys) {
  const json value = json::parse(R"({
    "synth": {"n_items": 200, "n_genres": 4},
    "retriever": {"type": "heuristic", "name": "h", "price_weight": 0.5},
    "preset": "fig2",
    "cutoffs": [1, 5],
    "agents": {"diversity": "oracle", "accuracy": "llm"},
    "llm": {"base_url": "http://localhost:8000/v1", "model": "m",
            "timeout_ms": 1500, "max_retries": 1},
    "holdout_fraction": 0.3,
    "seed": 9,
    "out": "/tmp/x"
  })");
  const RunConfig config = RunConfigFromJson(value);
  EXPECT_EQ(config.synth->n_items, 200);
  EXPECT_EQ(config.synth->seed, 9);
  EXPECT_EQ(config.retriever_name, "h");
  EXPECT_EQ(config.weights.price, 0.5);
  EXPECT_EQ(config.pipeline.n_div, 100);
  EXPECT_EQ(config.pipeline.cutoffs, (std::vector<int>{1, 5}));
  EXPECT_EQ(config.accuracy_agent, "llm");
  EXPECT_EQ(config.llm->timeout, std::chrono::milliseconds(1500));
  EXPECT_EQ(config.holdout_fraction, 0.3);
  ValidateRunConfig(config);
}

TEST(RunConfigTest, RejectsInvalidConfigs) {
  EXPECT_THROW(RunConfigFromJson(json::parse(R"({"bogus": 1})")), ConfigError);
  EXPECT_THROW(RunConfigFromJson(json::parse(R"({"seed": "x"})")), ConfigError);
  RunConfig config;
  EXPECT_THROW(ValidateRunConfig(config), ConfigError);  // no dataset
  config.synth = SynthConfig{};
  ValidateRunConfig(config);
  config.items_path = "items.jsonl";
  EXPECT_THROW(ValidateRunConfig(config), ConfigError);  // two datasets
  config.items_path.reset();
  config.retriever_type = "precomputed";
  EXPECT_THROW(ValidateRunConfig(config), ConfigError);  // no scores
  config.retriever_type = "gnn";
  EXPECT_THROW(ValidateRunConfig(config), ConfigError);
  config.retriever_type = "heuristic";
  config.diversity_agent = "llm";
  EXPECT_THROW(ValidateRunConfig(config), ConfigError);  // no llm section
  config.diversity_agent = "shuffle:x";
  EXPECT_THROW(ValidateRunConfig(config), ConfigError);
}

}  // namespace
}  // namespace comprank
