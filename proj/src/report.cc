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

#include "comprank/report.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "comprank/permutation.h"

namespace comprank {
namespace {

using nlohmann::json;

std::string Fixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

std::string Csv(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  json value = json::parse(in, nullptr, false);
  if (value.is_discarded()) throw DataError("invalid JSON in " + path.string());
  return value;
}

}  // namespace

void WriteMetricsCsv(std::span<const MetricsRow> rows, std::ostream& out) {
  out << "method,dataset,stage,K,hit,ndcg,entropy,vocab\n";
  for (const auto& row : rows) {
    out << Csv(row.retriever) << ',' << Csv(row.dataset) << ','
        << StageName(row.stage) << ',' << row.k << ',' << Fixed(row.hit) << ','
        << Fixed(row.ndcg) << ',' << Fixed(row.entropy) << ','
        << Fixed(row.vocab) << '\n';
  }
}

void WriteLiftCsv(std::span<const LiftRow> rows, std::ostream& out) {
  out << "dataset,K,metric,comparison,mean_lift_pct,std_err,n_retrievers\n";
  for (const auto& row : rows) {
    out << Csv(row.dataset) << ',' << row.k << ',' << MetricName(row.metric)
        << ',' << ComparisonName(row.comparison) << ','
        << (row.mean_lift_pct ? Fixed(*row.mean_lift_pct) : "") << ','
        << (row.std_err ? Fixed(*row.std_err) : "") << ',' << row.n_retrievers
        << '\n';
  }
}

void WriteWideTableCsv(std::span<const MetricsRow> rows, std::ostream& out) {
  using Key = std::tuple<std::string, Stage, int>;
  std::set<std::string> datasets;
  std::map<Key, std::map<std::string, const MetricsRow*>> table;
  for (const auto& row : rows) {
    datasets.insert(row.dataset);
    table[{row.retriever, row.stage, row.k}][row.dataset] = &row;
  }
  out << "method,stage,K";
  for (const auto& dataset : datasets) {
    for (Metric metric : kAllMetrics) {
      out << ',' << Csv(dataset + "." + std::string(MetricName(metric)));
    }
  }
  out << '\n';
  for (const auto& [key, cells] : table) {
    const auto& [retriever, stage, k] = key;
    out << Csv(retriever) << ',' << StageName(stage) << ',' << k;
    for (const auto& dataset : datasets) {
      const auto it = cells.find(dataset);
      for (Metric metric : kAllMetrics) {
        out << ',';
        if (it != cells.end()) out << Fixed(it->second->value(metric));
      }
    }
    out << '\n';
  }
}

json MetricsToJson(std::span<const MetricsRow> rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back({{"method", row.retriever},
                   {"dataset", row.dataset},
                   {"stage", StageName(row.stage)},
                   {"K", row.k},
                   {"hit", row.hit},
                   {"ndcg", row.ndcg},
                   {"entropy", row.entropy},
                   {"vocab", row.vocab}});
  }
  return out;
}

std::vector<MetricsRow> MetricsFromJson(const json& value) {
  if (!value.is_array()) throw DataError("metrics JSON must be an array");
  std::vector<MetricsRow> rows;
  try {
    for (const auto& entry : value) {
      MetricsRow row;
      row.retriever = entry.at("method").get<std::string>();
      row.dataset = entry.at("dataset").get<std::string>();
      row.stage = ParseStageName(entry.at("stage").get<std::string>());
      row.k = entry.at("K").get<int>();
      row.hit = entry.at("hit").get<double>();
      row.ndcg = entry.at("ndcg").get<double>();
      row.entropy = entry.at("entropy").get<double>();
      row.vocab = entry.at("vocab").get<double>();
      rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed metrics JSON: ") + e.what());
  }
  return rows;
}

json LiftToJson(std::span<const LiftRow> rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back({{"dataset", row.dataset},
                   {"K", row.k},
                   {"metric", MetricName(row.metric)},
                   {"comparison", ComparisonName(row.comparison)},
                   {"mean_lift_pct", row.mean_lift_pct
                                         ? json(*row.mean_lift_pct)
                                         : json(nullptr)},
                   {"std_err", row.std_err ? json(*row.std_err) : json(nullptr)},
                   {"n_retrievers", row.n_retrievers}});
  }
  return out;
}

json StageRecordToJson(const RankedList& list) {
  json record = {{"query", list.query_id},
                 {"stage", StageName(list.stage)},
                 {"order", list.order},
                 {"repairs", RepairFlagNames(list.repairs)},
                 {"failed", list.failed}};
  if (list.failed) record["error"] = list.error;
  return record;
}

RankedList StageRecordFromJson(const json& record) {
  RankedList list;
  try {
    list.query_id = record.at("query").get<std::string>();
    list.stage = ParseStageName(record.at("stage").get<std::string>());
    list.order = record.at("order").get<std::vector<std::string>>();
    for (const auto& name : record.at("repairs")) {
      const uint8_t flag = ParseRepairFlagName(name.get<std::string>());
      if (flag == 0) throw DataError("unknown repair flag");
      list.repairs |= flag;
    }
    list.failed = record.at("failed").get<bool>();
    if (list.failed) list.error = record.value("error", "");
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed stage record: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("malformed stage record: ") + e.what());
  }
  return list;
}

RunSummary LoadRunSummary(const std::filesystem::path& dir) {
  const json meta = ReadJsonFile(dir / "run.json");
  RunSummary summary;
  summary.dir = dir;
  try {
    summary.dataset = meta.at("dataset").get<std::string>();
    summary.retriever = meta.at("retriever").get<std::string>();
    summary.cutoffs = meta.at("cutoffs").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw DataError("malformed " + (dir / "run.json").string() + ": " +
                    e.what());
  }
  summary.rows = MetricsFromJson(ReadJsonFile(dir / "metrics.json"));
  return summary;
}

ReportTables MergeRuns(std::span<const RunSummary> runs) {
  if (runs.empty()) throw DataError("report needs at least one run");
  std::map<std::string, std::set<std::string>> retrievers_by_dataset;
  ReportTables tables;
  for (const auto& run : runs) {
    if (run.cutoffs != runs.front().cutoffs) {
      throw DataError("run " + run.dir.string() +
                      " uses different cutoffs than " +
                      runs.front().dir.string());
    }
    if (!retrievers_by_dataset[run.dataset].insert(run.retriever).second) {
      throw DataError("retriever '" + run.retriever + "' appears twice for " +
                      "dataset '" + run.dataset + "'");
    }
    for (const auto& row : run.rows) {
      if (row.dataset != run.dataset || row.retriever != run.retriever) {
        throw DataError("metrics in " + run.dir.string() +
                        " do not match its run.json");
      }
      tables.rows.push_back(row);
    }
  }
  const auto& first = retrievers_by_dataset.begin()->second;
  for (const auto& [dataset, names] : retrievers_by_dataset) {
    if (names != first) {
      throw DataError("dataset '" + dataset +
                      "' was run with a different set of retrievers");
    }
  }
  tables.lifts = ComputeLiftRows(tables.rows);
  return tables;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("failed writing " + path.string());
}

void WriteReport(const ReportTables& tables,
                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ostringstream table, metrics, lift;
  WriteWideTableCsv(tables.rows, table);
  WriteMetricsCsv(tables.rows, metrics);
  WriteLiftCsv(tables.lifts, lift);
  WriteTextFile(out_dir / "table.csv", table.str());
  WriteTextFile(out_dir / "metrics.csv", metrics.str());
  WriteTextFile(out_dir / "lift.csv", lift.str());
  WriteTextFile(out_dir / "lift.json", LiftToJson(tables.lifts).dump(2) + "\n");
}

}  // namespace comprank
