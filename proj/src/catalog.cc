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

#include "comprank/catalog.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "comprank/error.h"
#include "comprank/random.h"
#include "json.hpp"

namespace comprank {
namespace {

using nlohmann::json;

bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

[[noreturn]] void FailAt(const std::string& file, size_t line_number,
                         const std::string& message) {
  throw DataError(file + " line " + std::to_string(line_number) + ": " +
                  message);
}

Item ParseItemLine(const std::string& line, size_t line_number) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    FailAt("items", line_number, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) FailAt("items", line_number, "expected an object");
  Item item;
  const auto id = record.find("id");
  if (id == record.end() || !id->is_string()) {
    FailAt("items", line_number, "missing string field 'id'");
  }
  item.id = id->get<std::string>();
  const auto title = record.find("title");
  if (title == record.end() || !title->is_string()) {
    FailAt("items", line_number, "missing string field 'title'");
  }
  item.title = title->get<std::string>();
  if (const auto categories = record.find("categories");
      categories != record.end()) {
    if (!categories->is_array()) {
      FailAt("items", line_number, "'categories' must be an array");
    }
    for (const auto& category : *categories) {
      if (!category.is_string()) {
        FailAt("items", line_number, "'categories' must hold strings");
      }
      item.categories.push_back(category.get<std::string>());
    }
  } else {
    FailAt("items", line_number, "missing array field 'categories'");
  }
  if (const auto price = record.find("price");
      price != record.end() && !price->is_null()) {
    if (!price->is_number()) {
      FailAt("items", line_number, "'price' must be a number");
    }
    item.price = price->get<double>();
  }
  try {
    ValidateItem(item);
  } catch (const DataError& e) {
    FailAt("items", line_number, e.what());
  }
  return item;
}

}  // namespace

Edge MakeEdge(const std::string& a, const std::string& b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

void ValidateItem(const Item& item) {
  if (item.id.empty()) throw DataError("item id is empty");
  if (item.title.empty()) {
    throw DataError("item '" + item.id + "' has an empty title");
  }
  for (const auto& category : item.categories) {
    if (category.empty()) {
      throw DataError("item '" + item.id + "' has an empty category");
    }
  }
  if (item.price.has_value() &&
      (!std::isfinite(*item.price) || *item.price < 0)) {
    throw DataError("item '" + item.id + "' has an invalid price");
  }
}

void ComplementGraph::AddItem(Item item) {
  ValidateItem(item);
  if (items_.contains(item.id)) {
    throw DataError("duplicate item id '" + item.id + "'");
  }
  std::string id = item.id;
  items_.emplace(std::move(id), std::move(item));
}

bool ComplementGraph::AddEdge(const std::string& a, const std::string& b) {
  for (const auto* endpoint : {&a, &b}) {
    if (!items_.contains(*endpoint)) {
      throw DataError("edge references unknown item id '" + *endpoint + "'");
    }
  }
  if (a == b) throw DataError("self-loop on item '" + a + "'");
  if (!edges_.insert(MakeEdge(a, b)).second) return false;
  adjacency_[a].insert(b);
  adjacency_[b].insert(a);
  return true;
}

bool ComplementGraph::HasEdge(const std::string& a,
                              const std::string& b) const {
  return edges_.contains(MakeEdge(a, b));
}

const Item& ComplementGraph::item(const std::string& id) const {
  const auto it = items_.find(id);
  if (it == items_.end()) throw DataError("unknown item id '" + id + "'");
  return it->second;
}

const std::set<std::string>& ComplementGraph::Neighbors(
    const std::string& id) const {
  static const std::set<std::string> kNone;
  const auto it = adjacency_.find(id);
  return it == adjacency_.end() ? kNone : it->second;
}

ComplementGraph ReadCatalog(std::istream& items, std::istream& edges) {
  ComplementGraph graph;
  std::string line;
  size_t line_number = 0;
  while (std::getline(items, line)) {
    ++line_number;
    if (IsBlank(line)) continue;
    Item item = ParseItemLine(line, line_number);
    if (graph.HasItem(item.id)) {
      FailAt("items", line_number, "duplicate item id '" + item.id + "'");
    }
    graph.AddItem(std::move(item));
  }

  line_number = 0;
  while (std::getline(edges, line)) {
    ++line_number;
    if (IsBlank(line)) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      FailAt("edges", line_number, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_array() || record.size() != 2 || !record[0].is_string() ||
        !record[1].is_string()) {
      FailAt("edges", line_number, "expected [id_a, id_b]");
    }
    try {
      graph.AddEdge(record[0].get<std::string>(),
                    record[1].get<std::string>());
    } catch (const DataError& e) {
      FailAt("edges", line_number, e.what());
    }
  }
  return graph;
}

ComplementGraph LoadCatalog(const std::filesystem::path& items_path,
                            const std::filesystem::path& edges_path) {
  std::ifstream items(items_path);
  if (!items) throw DataError("cannot open items file " + items_path.string());
  std::ifstream edges(edges_path);
  if (!edges) throw DataError("cannot open edges file " + edges_path.string());
  return ReadCatalog(items, edges);
}

void WriteItems(const ComplementGraph& graph, std::ostream& out) {
  for (const auto& [id, item] : graph.items()) {
    json record = {{"id", item.id},
                   {"title", item.title},
                   {"categories", item.categories}};
    if (item.price.has_value()) record["price"] = *item.price;
    out << record.dump() << '\n';
  }
}

void WriteEdges(const ComplementGraph& graph, std::ostream& out) {
  for (const auto& [a, b] : graph.edges()) {
    out << json::array({a, b}).dump() << '\n';
  }
}

HoldoutSplit SplitHoldout(const ComplementGraph& graph, double holdout_fraction,
                          uint64_t seed) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw ConfigError("holdout fraction must lie in (0, 1)");
  }
  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  const auto held_count = static_cast<size_t>(
      std::llround(holdout_fraction * static_cast<double>(edges.size())));
  if (held_count == 0) {
    throw ConfigError("holdout fraction " + std::to_string(holdout_fraction) +
                      " of " + std::to_string(edges.size()) +
                      " edges leaves no held-out edges");
  }

  Rng rng(seed);
  rng.Shuffle(std::span<Edge>(edges));

  HoldoutSplit split;
  split.held_out.assign(edges.begin(), edges.begin() + held_count);
  std::sort(split.held_out.begin(), split.held_out.end());

  for (const auto& [id, item] : graph.items()) split.train.AddItem(item);
  for (size_t i = held_count; i < edges.size(); ++i) {
    split.train.AddEdge(edges[i].first, edges[i].second);
  }

  std::map<std::string, std::set<std::string>> grouped;
  for (const auto& [query, complement] : split.held_out) {
    grouped[query].insert(complement);
  }
  for (auto& [query, truth] : grouped) {
    split.queries.push_back({query, std::move(truth)});
  }
  return split;
}

}  // namespace comprank
