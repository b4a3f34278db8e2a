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

#ifndef COMPRANK_SYNTH_H_
#define COMPRANK_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "comprank/catalog.h"

namespace comprank {

// Synthetic catalog with planted complementary edges.
struct SynthConfig {
  int n_items = 500;
  int n_genres = 5;
  // Mean degree of the planted graph; round(n_items * edges_per_item / 2)
  // undirected edges are planted.
  double edges_per_item = 4.0;
  int title_tokens_min = 3;
  int title_tokens_max = 8;
  int token_pool_per_genre = 40;
  // Exact fraction (after rounding) of planted edges joining two genres.
  double cross_genre_edge_ratio = 0.3;
  uint64_t seed = 1;
};

// Throws ConfigError when a field is out of range.
void ValidateSynthConfig(const SynthConfig& config);

struct SynthDataset {
  ComplementGraph graph;
  std::map<std::string, std::string> genre_of;
};

// Deterministic for a fixed config. Item i belongs to genre i % n_genres,
// has categories = {genre} and a title drawn from that genre's token pool.
SynthDataset GenerateSynthetic(const SynthConfig& config);

// Writes items.jsonl, edges.jsonl and genres.json into `dir`.
void WriteSynthDataset(const SynthDataset& dataset,
                       const std::filesystem::path& dir);

}  // namespace comprank

#endif  // COMPRANK_SYNTH_H_
