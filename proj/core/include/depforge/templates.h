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
// Template expansion: turns pattern matches into deduction examples.
//
// Substitution ("X such as Y ..."): premise one is the source with the
// such-as branch removed, premise two states "Y is a X", and the conclusion
// puts Y in X's slot. Contraposition ("Ns that R Q"): the conclusion is
// "Ns that not-Q not-R". Generated text only rearranges source words,
// reinflects them, and adds words from template_lexicon().

#ifndef DEPFORGE_TEMPLATES_H_
#define DEPFORGE_TEMPLATES_H_

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depforge/conllu.h"
#include "depforge/example.h"
#include "depforge/matcher.h"
#include "depforge/pattern.h"

namespace depforge {

class ModifierStoplist {
 public:
  ModifierStoplist() = default;
  explicit ModifierStoplist(const std::set<std::string>& lemmas);

  // some, many, most, several, few, certain, other, various, numerous, all, no
  static ModifierStoplist defaults();
  // One lemma per line; blank lines and '#' comments ignored.
  static ModifierStoplist load(const std::filesystem::path& path);

  bool contains(std::string_view lemma) const;
  const std::set<std::string, std::less<>>& lemmas() const { return lemmas_; }

 private:
  std::set<std::string, std::less<>> lemmas_;
};

struct FilterDecision {
  bool keep = true;
  std::string reason;  // set when keep is false
};

// Drops matches whose $0 head carries a stoplisted det/amod/nummod/advmod
// modifier, whose $1 is a pronoun, or whose captured phrases are a single
// character.
FilterDecision filter_match(const MatchBinding& match,
                            const ParsedSentence& sentence,
                            const ModifierStoplist& stoplist);

struct Expansion {
  std::optional<DeductionExample> example;
  std::string skip_reason;  // set when example is empty
};

Expansion expand_substitution(const MatchBinding& match,
                              const ParsedSentence& sentence);
Expansion expand_contraposition(const MatchBinding& match,
                                const ParsedSentence& sentence);
Expansion expand(Operation op, const MatchBinding& match,
                 const ParsedSentence& sentence);

// Words a template may add: is are a an that do does not have has.
const std::set<std::string, std::less<>>& template_lexicon();

struct VpWord {
  std::string form;
  std::string lemma;
  std::string xpos;
  std::string deprel;
  bool is_head = false;
  bool head_child = false;  // direct dependent of the head verb
  // Set on a head verb rewritten by do-support so negation can be undone.
  std::optional<std::string> prior_form;
  std::optional<std::string> prior_xpos;

  bool operator==(const VpWord&) const = default;
};

struct VerbPhrase {
  std::vector<VpWord> words;
  bool subject_plural = true;

  std::string text() const;
  std::vector<std::string> forms() const;
};

// ids must be ascending and contain head.
VerbPhrase verb_phrase_from(const ParsedSentence& sentence, TokenId head,
                            std::span<const TokenId> ids, bool subject_plural);

// Toggles negation: removes an existing not/n't (and a do-support
// auxiliary), otherwise adds "not" after a copula or the first auxiliary,
// otherwise inserts do/does + not.
VerbPhrase negate(const VerbPhrase& vp);

}  // namespace depforge

#endif  // DEPFORGE_TEMPLATES_H_
