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

#include "comprank/llm_client.h"

#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace comprank {

void ValidateLlmConfig(const LlmConfig& config) {
  if (config.base_url.empty()) throw ConfigError("LLM base_url is empty");
  if (config.model.empty()) throw ConfigError("LLM model name is empty");
  if (config.max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (config.timeout.count() <= 0) throw ConfigError("timeout must be > 0");
  if (!(config.temperature >= 0)) {
    throw ConfigError("temperature must be nonnegative");
  }
  if (config.initial_backoff.count() < 0) {
    throw ConfigError("initial_backoff must be >= 0");
  }
}

std::string BuildChatRequest(const LlmConfig& config,
                             const std::string& prompt) {
  const nlohmann::json body = {
      {"model", config.model},
      {"messages", {{{"role", "user"}, {"content", prompt}}}},
      {"temperature", config.temperature},
  };
  return body.dump();
}

std::string ParseChatResponse(const std::string& body) {
  const auto response = nlohmann::json::parse(body, nullptr, false);
  if (response.is_discarded()) {
    throw AgentError("chat response is not JSON", 0);
  }
  try {
    return response.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw AgentError("chat response lacks choices[0].message.content", 0);
  }
}

ChatCompletionAgent::ChatCompletionAgent(LlmConfig config)
    : config_(std::move(config)) {
  ValidateLlmConfig(config_);
  const std::string& url = config_.base_url;
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("base_url '" + url + "' lacks a scheme");
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  std::string prefix =
      path_start == std::string::npos ? "" : url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/chat/completions";
}

std::string ChatCompletionAgent::Complete(const PromptBundle& prompt) const {
  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str());
      key != nullptr && *key != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string body = BuildChatRequest(config_, prompt.text);

  std::string last_error;
  int last_status = 0;
  auto backoff = config_.initial_backoff;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    const auto result = client.Post(path_, headers, body, "application/json");
    if (!result) {
      last_status = 0;
      last_error = httplib::to_string(result.error());
      continue;
    }
    last_status = result->status;
    if (result->status < 200 || result->status >= 300) {
      last_error = "HTTP " + std::to_string(result->status);
      continue;
    }
    return ParseChatResponse(result->body);
  }
  throw AgentError("chat completion failed after " +
                       std::to_string(config_.max_retries + 1) +
                       " attempt(s): " + last_error,
                   last_status);
}

}  // namespace comprank
