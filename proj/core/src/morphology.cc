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
#include "depforge/morphology.h"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "depforge/text_util.h"

namespace depforge {

namespace {

struct VerbEntry {
  std::string_view base;
  std::string_view singular3rd;
  std::string_view plural;
};

constexpr std::array<VerbEntry, 4> kIrregularVerbs = {{
    {"be", "is", "are"},
    {"have", "has", "have"},
    {"do", "does", "do"},
    {"go", "goes", "go"},
}};

constexpr std::array<std::string_view, 10> kModals = {
    "can", "could", "may", "might", "must", "shall", "should", "will", "would",
    "ought"};

// Base forms that look like participles.
constexpr std::array<std::string_view, 26> kFalseParticiples = {
    "need", "feed", "bleed", "breed", "exceed", "proceed", "succeed", "heed",
    "seed", "speed", "weed", "shed", "wed", "embed", "shred", "bring",
    "sing", "ring", "sting", "swing", "cling", "fling", "sling", "spring",
    "string", "wring"};

// Past forms without an -ed ending.
constexpr std::array<std::string_view, 48> kIrregularPast = {
    "ate", "became", "began", "bit", "blew", "broke", "brought", "built",
    "came", "caught", "chose", "drank", "drew", "drove", "fell", "felt",
    "flew", "forgot", "found", "gave", "got", "grew", "heard", "held",
    "kept", "knew", "led", "left", "lost", "made", "meant", "met",
    "paid", "ran", "rose", "said", "sang", "sat", "saw", "sent",
    "spoke", "spent", "stood", "swam", "took", "taught", "went", "wrote"};

// plural -> singular
constexpr std::array<std::pair<std::string_view, std::string_view>, 48>
    kIrregularNouns = {{
        {"children", "child"},     {"men", "man"},
        {"women", "woman"},        {"people", "person"},
        {"mice", "mouse"},         {"geese", "goose"},
        {"teeth", "tooth"},        {"feet", "foot"},
        {"oxen", "ox"},            {"wolves", "wolf"},
        {"leaves", "leaf"},        {"knives", "knife"},
        {"wives", "wife"},         {"lives", "life"},
        {"halves", "half"},        {"calves", "calf"},
        {"shelves", "shelf"},      {"thieves", "thief"},
        {"loaves", "loaf"},        {"criteria", "criterion"},
        {"phenomena", "phenomenon"}, {"analyses", "analysis"},
        {"crises", "crisis"},      {"theses", "thesis"},
        {"hypotheses", "hypothesis"}, {"diagnoses", "diagnosis"},
        {"fungi", "fungus"},       {"cacti", "cactus"},
        {"nuclei", "nucleus"},     {"bacteria", "bacterium"},
        {"larvae", "larva"},       {"algae", "alga"},
        {"viruses", "virus"},      {"buses", "bus"},
        {"gases", "gas"},          {"lenses", "lens"},
        {"bonuses", "bonus"},      {"campuses", "campus"},
        {"shoes", "shoe"},         {"toes", "toe"},
        {"canoes", "canoe"},       {"potatoes", "potato"},
        {"tomatoes", "tomato"},    {"heroes", "hero"},
        {"echoes", "echo"},        {"dice", "die"},
        {"indices", "index"},      {"matrices", "matrix"},
    }};

constexpr std::array<std::string_view, 10> kInvariantNouns = {
    "species", "series", "sheep", "deer", "fish", "aircraft", "news",
    "means", "offspring", "moose"};

constexpr std::array<std::string_view, 14> kAnExceptions = {
    // vowel letter, consonant sound
    "university", "unit", "union", "unique", "universal", "use", "user",
    "usual", "utility", "european", "one", "once", "uniform", "unicorn"};

constexpr std::array<std::string_view, 5> kSilentH = {"hour", "honest", "honor",
                                                      "honour", "heir"};

constexpr std::array<std::string_view, 16> kDeterminers = {
    "a", "an", "the", "this", "that", "these", "those", "my", "your", "his",
    "her", "its", "our", "their", "each", "every"};

bool contains(auto const& table, std::string_view w) {
  return std::find(table.begin(), table.end(), w) != table.end();
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool sibilant_end(std::string_view w) {
  return ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "z") ||
         ends_with(w, "ch") || ends_with(w, "sh");
}

// Copies the first-letter case of original onto word.
std::string match_case(std::string_view original, std::string word) {
  if (!original.empty() && original[0] >= 'A' && original[0] <= 'Z') {
    return capitalize_first(word);
  }
  return word;
}

std::string strip_third_person(std::string_view w) {
  if (w.size() > 4 && ends_with(w, "ies")) {
    return std::string(w.substr(0, w.size() - 3)) + "y";
  }
  if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "zzes") ||
      ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "oes")) {
    return std::string(w.substr(0, w.size() - 2));
  }
  return std::string(w.substr(0, w.size() - 1));
}

bool looks_third_person(std::string_view w) {
  return w.size() > 2 && ends_with(w, "s") && !ends_with(w, "ss") &&
         !ends_with(w, "us") && !ends_with(w, "is");
}

std::string add_third_person(std::string_view base) {
  if (base.size() > 1 && ends_with(base, "y") && !is_vowel(base[base.size() - 2])) {
    return std::string(base.substr(0, base.size() - 1)) + "ies";
  }
  if (sibilant_end(base) || ends_with(base, "o")) return std::string(base) + "es";
  return std::string(base) + "s";
}

}  // namespace

std::string reinflect_verb(std::string_view word, VerbTarget target) {
  const std::string lower = ascii_lower(word);
  if (contains(kModals, lower) || lower.empty()) return std::string(word);
  if (lower == "am") {
    if (target == VerbTarget::kSingular3rd) return match_case(word, "is");
    if (target == VerbTarget::kPlural) return match_case(word, "are");
    return match_case(word, "be");
  }
  if (lower == "was" || lower == "were") {
    if (target == VerbTarget::kSingular3rd) return match_case(word, "was");
    if (target == VerbTarget::kPlural) return match_case(word, "were");
    return match_case(word, "be");
  }
  for (const VerbEntry& e : kIrregularVerbs) {
    if (lower == e.base || lower == e.singular3rd || lower == e.plural) {
      switch (target) {
        case VerbTarget::kSingular3rd:
          return match_case(word, std::string(e.singular3rd));
        case VerbTarget::kPlural:
          return match_case(word, std::string(e.plural));
        case VerbTarget::kBase:
          return match_case(word, std::string(e.base));
      }
    }
  }
  if (contains(kIrregularPast, lower)) return std::string(word);
  const std::string base = looks_third_person(lower) ? strip_third_person(lower) : lower;
  if ((ends_with(lower, "ed") || ends_with(lower, "ing")) &&
      !contains(kFalseParticiples, base)) {
    return std::string(word);
  }
  if (target == VerbTarget::kSingular3rd) {
    return match_case(word, add_third_person(base));
  }
  return match_case(word, base);
}

std::string singularize_noun(std::string_view word) {
  const std::string lower = ascii_lower(word);
  if (contains(kInvariantNouns, lower)) return std::string(word);
  for (const auto& [plural, singular] : kIrregularNouns) {
    if (lower == plural) return match_case(word, std::string(singular));
  }
  if (lower.size() > 3 && ends_with(lower, "ies") && !is_vowel(lower[lower.size() - 4])) {
    return match_case(word, lower.substr(0, lower.size() - 3) + "y");
  }
  if (ends_with(lower, "sses") || ends_with(lower, "xes") ||
      ends_with(lower, "zzes") || ends_with(lower, "ches") ||
      ends_with(lower, "shes")) {
    return match_case(word, lower.substr(0, lower.size() - 2));
  }
  if (ends_with(lower, "ss") || ends_with(lower, "us") || ends_with(lower, "is") ||
      !ends_with(lower, "s") || lower.size() < 3) {
    return std::string(word);
  }
  return match_case(word, lower.substr(0, lower.size() - 1));
}

std::string pluralize_noun(std::string_view word) {
  const std::string lower = ascii_lower(word);
  if (contains(kInvariantNouns, lower)) return std::string(word);
  for (const auto& [plural, singular] : kIrregularNouns) {
    if (lower == singular) return match_case(word, std::string(plural));
  }
  if (lower.size() > 1 && ends_with(lower, "y") && !is_vowel(lower[lower.size() - 2])) {
    return match_case(word, lower.substr(0, lower.size() - 1) + "ies");
  }
  if (sibilant_end(lower)) return match_case(word, lower + "es");
  return match_case(word, lower + "s");
}

std::string_view indefinite_article(std::string_view next_word) {
  const std::string lower = ascii_lower(next_word);
  for (const std::string_view prefix : kAnExceptions) {
    if (lower.starts_with(prefix)) return "a";
  }
  for (const std::string_view prefix : kSilentH) {
    if (lower.starts_with(prefix)) return "an";
  }
  return !lower.empty() && is_vowel(lower[0]) ? "an" : "a";
}

bool is_determiner(std::string_view word) {
  return contains(kDeterminers, ascii_lower(word));
}

std::string adjust_noun_number(std::string_view phrase, NounNumber target) {
  std::vector<std::string> words = split_words(phrase);
  if (words.empty()) return std::string(phrase);
  std::string& head = words.back();
  const std::string first = ascii_lower(words.front());
  if (target == NounNumber::kSingular) {
    head = singularize_noun(head);
    if (first == "these") words.front() = match_case(words.front(), "this");
    if (first == "those") words.front() = match_case(words.front(), "that");
    if (!is_determiner(words.front())) {
      words.insert(words.begin(), std::string(indefinite_article(words.front())));
    }
  } else {
    head = pluralize_noun(head);
    if (words.size() > 1 && (first == "a" || first == "an")) {
      words.erase(words.begin());
    } else if (first == "this") {
      words.front() = match_case(words.front(), "these");
    } else if (first == "that") {
      words.front() = match_case(words.front(), "those");
    }
  }
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace depforge
