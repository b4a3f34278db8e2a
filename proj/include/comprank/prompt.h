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

#ifndef COMPRANK_PROMPT_H_
#define COMPRANK_PROMPT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "comprank/catalog.h"

namespace comprank {

enum class AgentKind { kDiversity, kAccuracy };

std::string_view AgentKindName(AgentKind kind);

inline constexpr size_t kDefaultMaxCandidates = 100;

// A rendered listwise reranking prompt. Candidate k is listed as "ID:k" and
// maps back to index_to_id[k].
struct PromptBundle {
  std::string query_id;
  std::string text;
  std::vector<std::string> index_to_id;
  AgentKind kind = AgentKind::kDiversity;
};

// The one line that differs between the two agent kinds.
std::string_view RankingFocusInstruction(AgentKind kind);

// Renders the reranking prompt from item titles only. Candidates are listed
// in input order. Throws ConfigError when the list is empty, longer than
// max_candidates, or holds duplicate ids.
PromptBundle BuildPrompt(const Item& query,
                         std::span<const Item* const> candidates,
                         AgentKind kind,
                         size_t max_candidates = kDefaultMaxCandidates);

}  // namespace comprank

#endif  // COMPRANK_PROMPT_H_
