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

#include "comprank/permutation.h"

#include <charconv>
#include <optional>

namespace comprank {
namespace {

constexpr std::pair<RepairFlag, std::string_view> kFlagNames[] = {
    {kDroppedOutOfRange, "dropped_out_of_range"},
    {kDeduplicated, "deduplicated"},
    {kAppendedMissing, "appended_missing"},
    {kFallbackIdentity, "fallback_identity"},
};

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const size_t begin = s.find_first_not_of(kSpace);
  if (begin == std::string_view::npos) return {};
  const size_t end = s.find_last_not_of(kSpace);
  return s.substr(begin, end - begin + 1);
}

struct Token {
  bool in_range;
  size_t value;
};

// An optionally signed decimal integer, nothing else.
std::optional<Token> ParseInteger(std::string_view s, size_t n) {
  s = Trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) return std::nullopt;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec == std::errc::result_out_of_range) return Token{false, 0};
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (negative && value != 0) return Token{false, 0};
  return Token{value < n, value};
}

std::vector<std::string_view> SplitCommas(std::string_view s) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const size_t comma = s.find(',', start);
    parts.push_back(s.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

std::vector<std::string> RepairFlagNames(uint8_t flags) {
  std::vector<std::string> names;
  for (const auto& [flag, name] : kFlagNames) {
    if (flags & flag) names.emplace_back(name);
  }
  return names;
}

uint8_t ParseRepairFlagName(std::string_view name) {
  for (const auto& [flag, flag_name] : kFlagNames) {
    if (flag_name == name) return flag;
  }
  return 0;
}

ParsedPermutation ParsePermutation(std::string_view raw, size_t n) {
  ParsedPermutation result;
  result.raw = std::string(raw);

  std::optional<std::vector<Token>> tokens;
  size_t search = 0;
  while (!tokens) {
    const size_t open = raw.find('[', search);
    if (open == std::string_view::npos) break;
    const size_t close = raw.find_first_of("[]", open + 1);
    if (close == std::string_view::npos) break;
    search = close;
    if (raw[close] == '[') continue;
    std::vector<Token> parsed;
    for (std::string_view part :
         SplitCommas(raw.substr(open + 1, close - open - 1))) {
      if (auto token = ParseInteger(part, n)) parsed.push_back(*token);
    }
    if (!parsed.empty()) tokens = std::move(parsed);
  }

  if (!tokens) {
    result.order.resize(n);
    for (size_t i = 0; i < n; ++i) result.order[i] = i;
    result.repairs = kFallbackIdentity;
    return result;
  }

  std::vector<bool> seen(n, false);
  for (const Token& token : *tokens) {
    if (!token.in_range) {
      result.repairs |= kDroppedOutOfRange;
    } else if (seen[token.value]) {
      result.repairs |= kDeduplicated;
    } else {
      seen[token.value] = true;
      result.order.push_back(token.value);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      result.order.push_back(i);
      result.repairs |= kAppendedMissing;
    }
  }
  return result;
}

std::string FormatPermutation(const std::vector<size_t>& order) {
  std::string out = "[";
  for (size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(order[i]);
  }
  out += ']';
  return out;
}

bool IsPermutation(const std::vector<size_t>& order, size_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (size_t value : order) {
    if (value >= n || seen[value]) return false;
    seen[value] = true;
  }
  return true;
}

}  // namespace comprank
