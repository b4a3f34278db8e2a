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

#ifndef COMPRANK_REPORT_H_
#define COMPRANK_REPORT_H_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "comprank/metrics.h"
#include "comprank/pipeline.h"
#include "json.hpp"

namespace comprank {

// CSV columns: method,dataset,stage,K,hit,ndcg,entropy,vocab.
void WriteMetricsCsv(std::span<const MetricsRow> rows, std::ostream& out);
// CSV columns: dataset,K,metric,comparison,mean_lift_pct,std_err,
// n_retrievers. Absent values are empty cells.
void WriteLiftCsv(std::span<const LiftRow> rows, std::ostream& out);

// Table-1 layout: one row per (method, stage, K) and four metric columns per
// dataset, e.g. "Home.hit".
void WriteWideTableCsv(std::span<const MetricsRow> rows, std::ostream& out);

// JSON forms keep full double precision and read back exactly.
nlohmann::json MetricsToJson(std::span<const MetricsRow> rows);
std::vector<MetricsRow> MetricsFromJson(const nlohmann::json& json);
nlohmann::json LiftToJson(std::span<const LiftRow> rows);

// One line of the per-query stage file.
nlohmann::json StageRecordToJson(const RankedList& list);
// Throws DataError on a malformed record.
RankedList StageRecordFromJson(const nlohmann::json& json);

// What `report` needs from one run directory.
struct RunSummary {
  std::filesystem::path dir;
  std::string dataset;
  std::string retriever;
  std::vector<int> cutoffs;
  std::vector<MetricsRow> rows;
};

// Reads run.json and metrics.json. Throws DataError if either is missing.
RunSummary LoadRunSummary(const std::filesystem::path& dir);

struct ReportTables {
  std::vector<MetricsRow> rows;
  std::vector<LiftRow> lifts;
};

// Merges runs and computes cross-retriever lifts. Throws DataError when runs
// disagree on cutoffs, a (dataset, retriever) pair repeats, or datasets are
// covered by different retriever sets.
ReportTables MergeRuns(std::span<const RunSummary> runs);

// Writes table.csv, metrics.csv, lift.csv, lift.json into out_dir.
void WriteReport(const ReportTables& tables,
                 const std::filesystem::path& out_dir);

// Writes text to path, throwing DataError on failure.
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace comprank

#endif  // COMPRANK_REPORT_H_
