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

#ifndef COMPRANK_PERMUTATION_H_
#define COMPRANK_PERMUTATION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace comprank {

// Repairs applied while turning model output into a permutation.
enum RepairFlag : uint8_t {
  kDroppedOutOfRange = 1 << 0,
  kDeduplicated = 1 << 1,
  kAppendedMissing = 1 << 2,
  kFallbackIdentity = 1 << 3,
};

// Flag names in a fixed order, e.g. {"deduplicated", "appended_missing"}.
std::vector<std::string> RepairFlagNames(uint8_t flags);
uint8_t ParseRepairFlagName(std::string_view name);

struct ParsedPermutation {
  // Always a permutation of 0..n-1.
  std::vector<size_t> order;
  uint8_t repairs = 0;
  std::string raw;
};

// Extracts the first bracketed list holding at least one integer, then
// repairs it: non-integers dropped, out-of-range ids dropped, later
// duplicates dropped, missing ids appended ascending. Without such a list the
// identity order is returned. Never throws for n >= 1.
ParsedPermutation ParsePermutation(std::string_view raw, size_t n);

// "[a, b, c]".
std::string FormatPermutation(const std::vector<size_t>& order);

bool IsPermutation(const std::vector<size_t>& order, size_t n);

}  // namespace comprank

#endif  // COMPRANK_PERMUTATION_H_
