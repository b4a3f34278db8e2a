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

#ifndef COMPRANK_MOCK_AGENT_H_
#define COMPRANK_MOCK_AGENT_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "comprank/agent.h"

namespace comprank {

enum class MockPolicy { kIdentity, kReverse, kSeededShuffle, kOracle };

// Deterministic stand-in for an LLM endpoint. Answers are rendered as
// "[i, j, ...]" so they pass through ParsePermutation unchanged.
class MockAgent : public Agent {
 public:
  static MockAgent Identity() { return MockAgent(MockPolicy::kIdentity); }
  static MockAgent Reverse() { return MockAgent(MockPolicy::kReverse); }
  // The permutation depends on the seed and the prompt text only.
  static MockAgent SeededShuffle(uint64_t seed);
  // Lists ground-truth candidates of the prompt's query first, then the
  // rest, preserving input order within both groups.
  static MockAgent Oracle(
      std::map<std::string, std::set<std::string>> ground_truth);

  // Parses "identity", "reverse", "shuffle:<seed>". "oracle" needs ground
  // truth and is built with Oracle(). Throws ConfigError otherwise.
  static MockAgent FromSpec(std::string_view spec);

  std::string Complete(const PromptBundle& prompt) const override;

  MockPolicy policy() const { return policy_; }

 private:
  explicit MockAgent(MockPolicy policy) : policy_(policy) {}

  MockPolicy policy_;
  uint64_t seed_ = 0;
  std::map<std::string, std::set<std::string>> ground_truth_;
};

}  // namespace comprank

#endif  // COMPRANK_MOCK_AGENT_H_
