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
// Small English inflection heuristics: irregular tables first, then suffix
// rules. Inputs keep the capitalization of their first letter.

#ifndef DEPFORGE_MORPHOLOGY_H_
#define DEPFORGE_MORPHOLOGY_H_

#include <string>
#include <string_view>

namespace depforge {

enum class VerbTarget { kSingular3rd, kPlural, kBase };
enum class NounNumber { kSingular, kPlural };

// Accepts a lemma or an inflected present-tense form. Forms the rules do not
// cover (past tense, modals, participles) come back unchanged.
std::string reinflect_verb(std::string_view word, VerbTarget target);

std::string singularize_noun(std::string_view word);
std::string pluralize_noun(std::string_view word);

// "a" or "an" for the word that follows the article.
std::string_view indefinite_article(std::string_view next_word);

bool is_determiner(std::string_view word);

// Treats the last word as the head noun. Singularizing adds an indefinite
// article when the phrase has no determiner; pluralizing drops a/an.
std::string adjust_noun_number(std::string_view phrase, NounNumber target);

}  // namespace depforge

#endif  // DEPFORGE_MORPHOLOGY_H_
