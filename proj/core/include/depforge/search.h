// Copyright 2026 The Depforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Index-accelerated corpus search.

#ifndef DEPFORGE_SEARCH_H_
#define DEPFORGE_SEARCH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "depforge/chain_index.h"
#include "depforge/matcher.h"
#include "depforge/pattern.h"

namespace depforge {

// A match plus the location of its sentence inside the index.
struct SearchHit {
  std::uint32_t chunk_id = 0;
  std::uint32_t ordinal = 0;
  MatchBinding match;

  auto operator<=>(const SearchHit&) const = default;
};

struct SearchPlan {
  // Seed key, or nullopt when the pattern has no indexable chain and every
  // sentence must be scanned.
  std::optional<ChainKey> key;
  std::uint64_t estimated_postings = 0;
  std::string note;
};

// Picks the most selective chain: among upward paths of pattern nodes that
// carry both an arc (other than ROOT) and a POS constraint, truncated to the
// index depth, the one with the fewest postings.
SearchPlan plan_search(const DepIndex& index, const DepPattern& pattern);

struct SearchOptions {
  unsigned workers = 1;
  bool force_full_scan = false;
  // Receives the fallback warning when no seed key exists.
  std::function<void(const std::string&)> warn;
};

// Hits ordered by (chunk_id, ordinal, capture map); the result set equals
// running match_sentence over every sentence of the index.
std::vector<SearchHit> search(const DepIndex& index, const DepPattern& pattern,
                              const SearchOptions& options = {});

// Scans every stored sentence with the reference matcher.
std::vector<SearchHit> full_scan(const DepIndex& index,
                                 const DepPattern& pattern,
                                 unsigned workers = 1);

}  // namespace depforge

#endif  // DEPFORGE_SEARCH_H_
