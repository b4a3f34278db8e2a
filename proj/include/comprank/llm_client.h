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

#ifndef COMPRANK_LLM_CLIENT_H_
#define COMPRANK_LLM_CLIENT_H_

#include <chrono>
#include <string>

#include "comprank/agent.h"

namespace comprank {

struct LlmConfig {
  // OpenAI-style base URL, e.g. "http://localhost:8000/v1". Requests go to
  // <base_url>/chat/completions.
  std::string base_url;
  std::string model;
  // Environment variable holding the bearer token. Unset or empty means no
  // Authorization header.
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.0;
  int max_retries = 3;
  std::chrono::milliseconds timeout{60000};
  // Delay before the first retry; doubles on each further retry.
  std::chrono::milliseconds initial_backoff{500};
};

void ValidateLlmConfig(const LlmConfig& config);

// Serialized chat-completions request body for a prompt.
std::string BuildChatRequest(const LlmConfig& config, const std::string& prompt);

// Extracts choices[0].message.content. Throws AgentError on a malformed body.
std::string ParseChatResponse(const std::string& body);

// Chat-completions client. Each call opens its own connection, so a single
// instance can serve concurrent callers.
class ChatCompletionAgent : public Agent {
 public:
  explicit ChatCompletionAgent(LlmConfig config);

  // Retries transport errors and non-2xx responses up to max_retries times
  // with exponential backoff, then throws AgentError.
  std::string Complete(const PromptBundle& prompt) const override;

  const LlmConfig& config() const { return config_; }

 private:
  LlmConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace comprank

#endif  // COMPRANK_LLM_CLIENT_H_
