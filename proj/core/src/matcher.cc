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
#include "depforge/matcher.h"

#include <algorithm>
#include <stdexcept>

namespace depforge {

namespace {

struct FlatNode {
  const PatternNode* node;
  int parent;  // index into the flat array, -1 for the root
};

void flatten(const PatternNode& node, int parent, std::vector<FlatNode>& out) {
  const int self = static_cast<int>(out.size());
  out.push_back({&node, parent});
  for (const PatternNode& c : node.children) flatten(c, self, out);
}

class Enumerator {
 public:
  Enumerator(const std::vector<FlatNode>& flat, const ParsedSentence& sentence)
      : flat_(flat),
        sentence_(sentence),
        assignment_(flat.size(), 0),
        used_(sentence.size() + 1, false) {}

  void Run(std::vector<std::vector<TokenId>>& out) {
    out_ = &out;
    for (const Token& t : sentence_.tokens()) Try(0, t.id);
  }

 private:
  void Try(std::size_t i, TokenId candidate) {
    if (used_[candidate] || !node_accepts(*flat_[i].node, sentence_.token(candidate))) {
      return;
    }
    assignment_[i] = candidate;
    used_[candidate] = true;
    if (i + 1 == flat_.size()) {
      out_->push_back(assignment_);
    } else {
      const TokenId head = assignment_[flat_[i + 1].parent];
      for (const TokenId child : sentence_.children(head)) Try(i + 1, child);
    }
    used_[candidate] = false;
  }

  const std::vector<FlatNode>& flat_;
  const ParsedSentence& sentence_;
  std::vector<TokenId> assignment_;
  std::vector<bool> used_;
  std::vector<std::vector<TokenId>>* out_ = nullptr;
};

}  // namespace

TokenId MatchBinding::at(int capture) const {
  const auto it = bindings.find(capture);
  if (it == bindings.end()) {
    throw std::out_of_range("capture $" + std::to_string(capture) + " is unbound");
  }
  return it->second;
}

bool node_accepts(const PatternNode& node, const Token& token) {
  if (node.arc) {
    if (node.requires_root()) {
      if (token.head != 0) return false;
    } else if (token.deprel != *node.arc) {
      return false;
    }
  }
  if (node.pos && token.xpos != *node.pos) return false;
  if (node.lemma && token.lemma != *node.lemma) return false;
  return true;
}

std::vector<MatchBinding> match_sentence(const DepPattern& pattern,
                                         const ParsedSentence& sentence) {
  std::vector<FlatNode> flat;
  flatten(pattern.root, -1, flat);
  // Parents precede children in pre-order, so each node's head is assigned
  // before the node itself is tried.
  std::vector<std::vector<TokenId>> assignments;
  Enumerator(flat, sentence).Run(assignments);
  std::sort(assignments.begin(), assignments.end());

  std::vector<MatchBinding> matches;
  std::vector<std::map<int, TokenId>> seen;
  for (const auto& a : assignments) {
    MatchBinding m;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      if (flat[i].node->capture) m.bindings[*flat[i].node->capture] = a[i];
    }
    if (std::find(seen.begin(), seen.end(), m.bindings) != seen.end()) continue;
    seen.push_back(m.bindings);
    m.sentence = sentence.ref();
    m.pattern_id = pattern.id;
    m.anchor = a[0];
    matches.push_back(std::move(m));
  }
  std::sort(matches.begin(), matches.end(),
            [](const MatchBinding& x, const MatchBinding& y) {
              return x.bindings < y.bindings;
            });
  return matches;
}

}  // namespace depforge
