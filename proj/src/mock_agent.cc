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

#include "comprank/mock_agent.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <vector>

#include "comprank/permutation.h"
#include "comprank/random.h"

namespace comprank {
namespace {

// FNV-1a.
uint64_t HashText(std::string_view text) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

MockAgent MockAgent::SeededShuffle(uint64_t seed) {
  MockAgent agent(MockPolicy::kSeededShuffle);
  agent.seed_ = seed;
  return agent;
}

MockAgent MockAgent::Oracle(
    std::map<std::string, std::set<std::string>> ground_truth) {
  MockAgent agent(MockPolicy::kOracle);
  agent.ground_truth_ = std::move(ground_truth);
  return agent;
}

MockAgent MockAgent::FromSpec(std::string_view spec) {
  if (spec == "identity") return Identity();
  if (spec == "reverse") return Reverse();
  constexpr std::string_view kShuffle = "shuffle:";
  if (spec.starts_with(kShuffle)) {
    const std::string_view digits = spec.substr(kShuffle.size());
    uint64_t seed = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec == std::errc() && ptr == digits.data() + digits.size() &&
        !digits.empty()) {
      return SeededShuffle(seed);
    }
  }
  throw ConfigError("unknown mock policy '" + std::string(spec) + "'");
}

std::string MockAgent::Complete(const PromptBundle& prompt) const {
  const size_t n = prompt.index_to_id.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  switch (policy_) {
    case MockPolicy::kIdentity:
      break;
    case MockPolicy::kReverse:
      std::reverse(order.begin(), order.end());
      break;
    case MockPolicy::kSeededShuffle: {
      Rng rng(seed_ ^ HashText(prompt.text));
      rng.Shuffle(std::span<size_t>(order));
      break;
    }
    case MockPolicy::kOracle: {
      static const std::set<std::string> kNone;
      const auto it = ground_truth_.find(prompt.query_id);
      const auto& truth = it == ground_truth_.end() ? kNone : it->second;
      std::stable_partition(order.begin(), order.end(), [&](size_t k) {
        return truth.contains(prompt.index_to_id[k]);
      });
      break;
    }
  }
  return FormatPermutation(order);
}

}  // namespace comprank
