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
#include "depforge/search.h"

#include <algorithm>
#include <future>

namespace depforge {

namespace {

bool indexable(const PatternNode& node) {
  return node.arc && !node.requires_root() && node.pos;
}

ChainStep step_for(const PatternNode& node) {
  return {*node.arc, *node.pos, node.lemma};
}

// Collects, for every indexable node, its upward chain of indexable nodes.
void candidate_chains(const PatternNode& node,
                      std::vector<const PatternNode*>& ancestors,
                      unsigned max_depth, std::vector<ChainKey>& out) {
  if (indexable(node)) {
    ChainKey key;
    key.steps.push_back(step_for(node));
    for (auto it = ancestors.rbegin();
         it != ancestors.rend() && key.depth() < max_depth && indexable(**it);
         ++it) {
      key.steps.push_back(step_for(**it));
    }
    out.push_back(std::move(key));
  }
  ancestors.push_back(&node);
  for (const PatternNode& c : node.children) {
    candidate_chains(c, ancestors, max_depth, out);
  }
  ancestors.pop_back();
}

std::vector<SearchHit> match_ordinals(const DepIndex& index,
                                      const DepPattern& pattern,
                                      std::uint32_t chunk_id,
                                      const std::vector<std::uint32_t>& ordinals) {
  std::vector<SearchHit> hits;
  for (const std::uint32_t ordinal : ordinals) {
    const ParsedSentence sentence = index.sentence(chunk_id, ordinal);
    for (MatchBinding& m : match_sentence(pattern, sentence)) {
      hits.push_back({chunk_id, ordinal, std::move(m)});
    }
  }
  return hits;
}

template <typename PerChunk>
std::vector<SearchHit> fan_out(const DepIndex& index, unsigned workers,
                               PerChunk&& per_chunk) {
  const auto chunks = static_cast<std::uint32_t>(index.chunk_count());
  std::vector<std::vector<SearchHit>> parts(chunks);
  workers = std::max(1u, workers);
  for (std::uint32_t begin = 0; begin < chunks; begin += workers) {
    const std::uint32_t end = std::min(chunks, begin + workers);
    if (end - begin == 1) {
      parts[begin] = per_chunk(begin);
      continue;
    }
    std::vector<std::future<std::vector<SearchHit>>> pending;
    for (std::uint32_t c = begin; c < end; ++c) {
      pending.push_back(std::async(std::launch::async, per_chunk, c));
    }
    for (std::uint32_t c = begin; c < end; ++c) parts[c] = pending[c - begin].get();
  }
  std::vector<SearchHit> merged;
  for (auto& part : parts) {
    merged.insert(merged.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  }
  return merged;
}

}  // namespace

SearchPlan plan_search(const DepIndex& index, const DepPattern& pattern) {
  std::vector<ChainKey> chains;
  std::vector<const PatternNode*> ancestors;
  candidate_chains(pattern.root, ancestors, index.max_depth(), chains);
  SearchPlan plan;
  if (chains.empty()) {
    plan.note = "pattern '" + pattern.id +
                "' has no node with both an arc and a POS constraint; "
                "falling back to a full scan";
    return plan;
  }
  for (ChainKey& key : chains) {
    const std::uint64_t count = index.posting_count(key);
    if (!plan.key || count < plan.estimated_postings) {
      plan.estimated_postings = count;
      plan.key = std::move(key);
    }
  }
  plan.note = "seed key " + plan.key->to_string();
  return plan;
}

std::vector<SearchHit> full_scan(const DepIndex& index,
                                 const DepPattern& pattern, unsigned workers) {
  return fan_out(index, workers, [&](std::uint32_t chunk_id) {
    std::vector<std::uint32_t> all(index.chunk_sentence_count(chunk_id));
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return match_ordinals(index, pattern, chunk_id, all);
  });
}

std::vector<SearchHit> search(const DepIndex& index, const DepPattern& pattern,
                              const SearchOptions& options) {
  const SearchPlan plan =
      options.force_full_scan ? SearchPlan{} : plan_search(index, pattern);
  if (!plan.key) {
    if (options.warn && !options.force_full_scan) options.warn(plan.note);
    return full_scan(index, pattern, options.workers);
  }
  const ChainKey& key = *plan.key;
  return fan_out(index, options.workers, [&](std::uint32_t chunk_id) {
    std::vector<std::uint32_t> ordinals;
    PostingStream stream = index.lookup_in_chunk(chunk_id, key);
    Posting p;
    while (stream.next(p)) {
      if (ordinals.empty() || ordinals.back() != p.ordinal) {
        ordinals.push_back(p.ordinal);
      }
    }
    return match_ordinals(index, pattern, chunk_id, ordinals);
  });
}

}  // namespace depforge
