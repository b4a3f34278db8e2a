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

#include "comprank/synth.h"

#include <cmath>
#include <fstream>
#include <vector>

#include "comprank/error.h"
#include "comprank/random.h"
#include "json.hpp"

namespace comprank {
namespace {

std::string PaddedId(int index, int count) {
  const std::string digits = std::to_string(index);
  const size_t width = std::to_string(std::max(count - 1, 0)).size();
  return "p" + std::string(width - digits.size(), '0') + digits;
}

std::string TokenName(int genre, int token) {
  return "g" + std::to_string(genre) + "w" + std::to_string(token);
}

}  // namespace

void ValidateSynthConfig(const SynthConfig& config) {
  if (config.n_items < 1) throw ConfigError("n_items must be positive");
  if (config.n_genres < 1) throw ConfigError("n_genres must be positive");
  if (config.n_genres > config.n_items) {
    throw ConfigError("n_genres (" + std::to_string(config.n_genres) +
                      ") exceeds n_items (" + std::to_string(config.n_items) +
                      ")");
  }
  if (!(config.edges_per_item >= 0) || !std::isfinite(config.edges_per_item)) {
    throw ConfigError("edges_per_item must be nonnegative");
  }
  if (config.title_tokens_min < 1) {
    throw ConfigError("title_tokens_min must be positive");
  }
  if (config.title_tokens_max < config.title_tokens_min) {
    throw ConfigError("title_tokens_min exceeds title_tokens_max");
  }
  if (config.token_pool_per_genre < 1) {
    throw ConfigError("token_pool_per_genre must be positive");
  }
  if (!(config.cross_genre_edge_ratio >= 0 &&
        config.cross_genre_edge_ratio <= 1)) {
    throw ConfigError("cross_genre_edge_ratio must lie in [0, 1]");
  }
}

SynthDataset GenerateSynthetic(const SynthConfig& config) {
  ValidateSynthConfig(config);
  Rng rng(config.seed);
  SynthDataset dataset;

  const int n = config.n_items;
  std::vector<std::string> ids(n);
  std::vector<int> genre(n);
  std::vector<std::vector<int>> members(config.n_genres);
  for (int i = 0; i < n; ++i) {
    ids[i] = PaddedId(i, n);
    genre[i] = i % config.n_genres;
    members[genre[i]].push_back(i);

    const int span = config.title_tokens_max - config.title_tokens_min + 1;
    const int length =
        config.title_tokens_min + static_cast<int>(rng.Below(span));
    std::string title;
    for (int t = 0; t < length; ++t) {
      if (t > 0) title += ' ';
      title += TokenName(genre[i], static_cast<int>(rng.Below(
                                       config.token_pool_per_genre)));
    }
    // Log-uniform in [5, 500), rounded to cents.
    const double price =
        std::round(5.0 * std::pow(100.0, rng.Unit()) * 100.0) / 100.0;
    const std::string genre_name = "genre" + std::to_string(genre[i]);
    dataset.graph.AddItem({ids[i], title, {genre_name}, price});
    dataset.genre_of[ids[i]] = genre_name;
  }

  const auto total = static_cast<int64_t>(
      std::llround(static_cast<double>(n) * config.edges_per_item / 2.0));
  const auto cross = static_cast<int64_t>(std::llround(
      static_cast<double>(total) * config.cross_genre_edge_ratio));
  const int64_t same = total - cross;

  int64_t same_capacity = 0;
  std::vector<int> same_sources;
  for (const auto& group : members) {
    const auto size = static_cast<int64_t>(group.size());
    same_capacity += size * (size - 1) / 2;
    if (size >= 2) same_sources.insert(same_sources.end(), group.begin(),
                                       group.end());
  }
  const int64_t cross_capacity =
      static_cast<int64_t>(n) * (n - 1) / 2 - same_capacity;
  if (same > same_capacity || cross > cross_capacity) {
    throw ConfigError(
        "cannot plant " + std::to_string(same) + " same-genre and " +
        std::to_string(cross) + " cross-genre edges in this catalog");
  }

  const int64_t max_attempts = 200 * (total + 10);
  int64_t attempts = 0;
  auto plant = [&](int64_t count, bool cross_genre) {
    int64_t planted = 0;
    while (planted < count) {
      if (++attempts > max_attempts) {
        throw ConfigError("edge density too high to plant " +
                          std::to_string(total) + " edges");
      }
      int u;
      int v;
      if (cross_genre) {
        u = static_cast<int>(rng.Below(n));
        v = static_cast<int>(rng.Below(n));
        if (genre[u] == genre[v]) continue;
      } else {
        u = same_sources[rng.Below(same_sources.size())];
        const auto& group = members[genre[u]];
        v = group[rng.Below(group.size())];
        if (u == v) continue;
      }
      if (dataset.graph.AddEdge(ids[u], ids[v])) ++planted;
    }
  };
  plant(same, /*cross_genre=*/false);
  plant(cross, /*cross_genre=*/true);
  return dataset;
}

void WriteSynthDataset(const SynthDataset& dataset,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream items(dir / "items.jsonl", std::ios::binary);
  std::ofstream edges(dir / "edges.jsonl", std::ios::binary);
  std::ofstream genres(dir / "genres.json", std::ios::binary);
  if (!items || !edges || !genres) {
    throw DataError("cannot write dataset files into " + dir.string());
  }
  WriteItems(dataset.graph, items);
  WriteEdges(dataset.graph, edges);
  genres << nlohmann::json(dataset.genre_of).dump(2) << '\n';
}

}  // namespace comprank
