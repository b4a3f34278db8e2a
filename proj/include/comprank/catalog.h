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

#ifndef COMPRANK_CATALOG_H_
#define COMPRANK_CATALOG_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace comprank {

// A product node. Categories run coarse to fine.
struct Item {
  std::string id;
  std::string title;
  std::vector<std::string> categories;
  std::optional<double> price;

  friend bool operator==(const Item&, const Item&) = default;
};

// Undirected edge stored with first < second.
using Edge = std::pair<std::string, std::string>;

// Returns the edge {a, b} in normalized order.
Edge MakeEdge(const std::string& a, const std::string& b);

// Throws DataError if the item violates the Item invariants.
void ValidateItem(const Item& item);

// Items plus undirected complementary edges. Edges always reference known
// items, never form self-loops and are deduplicated regardless of direction.
class ComplementGraph {
 public:
  // Throws DataError on an invalid item or a duplicate id.
  void AddItem(Item item);

  // Adds the undirected edge {a, b}. Returns false if it already existed.
  // Throws DataError on unknown endpoints or a self-loop.
  bool AddEdge(const std::string& a, const std::string& b);

  bool HasItem(const std::string& id) const { return items_.contains(id); }
  bool HasEdge(const std::string& a, const std::string& b) const;

  // Throws DataError if the id is unknown.
  const Item& item(const std::string& id) const;

  const std::map<std::string, Item>& items() const { return items_; }
  const std::set<Edge>& edges() const { return edges_; }

  // Items adjacent to `id`; empty for isolated or unknown ids.
  const std::set<std::string>& Neighbors(const std::string& id) const;

  size_t num_items() const { return items_.size(); }
  size_t num_edges() const { return edges_.size(); }

  friend bool operator==(const ComplementGraph& a, const ComplementGraph& b) {
    return a.items_ == b.items_ && a.edges_ == b.edges_;
  }

 private:
  std::map<std::string, Item> items_;
  std::set<Edge> edges_;
  std::map<std::string, std::set<std::string>> adjacency_;
};

// An evaluation query: a node and its held-out true complements.
struct QueryInstance {
  std::string query_id;
  std::set<std::string> ground_truth;

  friend bool operator==(const QueryInstance&, const QueryInstance&) = default;
};

// Line-delimited JSON readers. Errors carry the 1-based line number.
ComplementGraph ReadCatalog(std::istream& items, std::istream& edges);
ComplementGraph LoadCatalog(const std::filesystem::path& items_path,
                            const std::filesystem::path& edges_path);

// Writers for the same formats, in id order.
void WriteItems(const ComplementGraph& graph, std::ostream& out);
void WriteEdges(const ComplementGraph& graph, std::ostream& out);

struct HoldoutSplit {
  ComplementGraph train;
  std::vector<Edge> held_out;
  // Sorted by query id. Each held-out edge {i, j} with i < j adds j to the
  // ground truth of query i.
  std::vector<QueryInstance> queries;
};

// Removes round(holdout_fraction * num_edges) seeded-random edges from the
// graph. Throws ConfigError if the fraction is outside (0, 1) or the held-out
// count rounds to zero.
HoldoutSplit SplitHoldout(const ComplementGraph& graph, double holdout_fraction,
                          uint64_t seed);

}  // namespace comprank

#endif  // COMPRANK_CATALOG_H_
