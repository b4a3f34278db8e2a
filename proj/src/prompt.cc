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

#include "comprank/prompt.h"

#include <set>

#include "comprank/error.h"

namespace comprank {
namespace {

// Titles are rendered on a single line.
std::string OneLine(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

constexpr std::string_view kTaskDefinition =
    "The task is identifying the complementary relation between the given "
    "product and candidates.\n"
    "Complementary is defined as: products are likely to be purchased or used "
    "at the same time, but it is not a direct substitute.\n";

constexpr std::string_view kFewShotExamples =
    "A complementary product can be:\n"
    "- An accessory of the given product (e.g., iPhone Case is complementary "
    "to iPhone)\n"
    "- Both accessories to the same product (e.g., Speaker Cables can be "
    "complementary to Speaker Stands)\n"
    "- Products used together for the same activity (e.g., Bowl can be "
    "complementary to Plate)\n";

constexpr std::string_view kRankingInstructions =
    "Then rerank the candidates based on above given information. The order "
    "of reranking result should represent how likely the candidate is a "
    "complementary product.\n";

constexpr std::string_view kOutputFormat =
    "Your answer should ONLY rank all mentioned candidates ID, do NOT repeat "
    "or include Name. And omit anything else such as your thinking and "
    "decision-making process.\n"
    "Example answer format for 5 candidates: [1, 4, 3, 0, 2]\n";

}  // namespace

std::string_view AgentKindName(AgentKind kind) {
  return kind == AgentKind::kDiversity ? "diversity" : "accuracy";
}

std::string_view RankingFocusInstruction(AgentKind kind) {
  switch (kind) {
    case AgentKind::kDiversity:
      return "Meanwhile, focus on the diversity aspect (more items with "
             "different 'genre' feature at the top of the list).";
    case AgentKind::kAccuracy:
      return "Meanwhile, focus on the accuracy aspect (choose items that are "
             "most precisely and correctly complementary to the given "
             "product).";
  }
  return {};
}

PromptBundle BuildPrompt(const Item& query,
                         std::span<const Item* const> candidates,
                         AgentKind kind, size_t max_candidates) {
  if (candidates.empty()) {
    throw ConfigError("cannot build a prompt without candidates");
  }
  if (candidates.size() > max_candidates) {
    throw ConfigError("prompt holds " + std::to_string(candidates.size()) +
                      " candidates, more than the limit of " +
                      std::to_string(max_candidates));
  }

  PromptBundle bundle;
  bundle.query_id = query.id;
  bundle.kind = kind;
  std::set<std::string_view> seen;

  std::string& text = bundle.text;
  text += "Considering a product, its basic information is:\n";
  text += "{title: " + OneLine(query.title) + "}\n\n";
  text += "Here's a list of the candidate products:\n";
  for (size_t k = 0; k < candidates.size(); ++k) {
    const Item& candidate = *candidates[k];
    if (!seen.insert(candidate.id).second) {
      throw ConfigError("duplicate candidate '" + candidate.id + "'");
    }
    bundle.index_to_id.push_back(candidate.id);
    text += "ID:" + std::to_string(k) + " title: " + OneLine(candidate.title) +
            "\n";
  }
  text += '\n';
  text += kTaskDefinition;
  text += '\n';
  text += kFewShotExamples;
  text += '\n';
  text += kRankingInstructions;
  text += RankingFocusInstruction(kind);
  text += "\n\n";
  text += kOutputFormat;
  return bundle;
}

}  // namespace comprank
