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

#ifndef COMPRANK_AGENT_H_
#define COMPRANK_AGENT_H_

#include <string>

#include "comprank/error.h"
#include "comprank/prompt.h"

namespace comprank {

// Failure to obtain a completion, raised after retries are exhausted.
class AgentError : public Error {
 public:
  AgentError(const std::string& message, int last_status)
      : Error(message), last_status_(last_status) {}

  // Last HTTP status seen, or 0 when no response arrived.
  int last_status() const { return last_status_; }

 private:
  int last_status_;
};

// Something that answers a reranking prompt with raw text. Implementations
// must be safe to call concurrently.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string Complete(const PromptBundle& prompt) const = 0;
};

}  // namespace comprank

#endif  // COMPRANK_AGENT_H_
