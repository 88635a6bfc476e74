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
#include "depforge/synth.h"

#include <array>
#include <vector>

#include "depforge/rng.h"

namespace depforge {

namespace {

struct Noun {
  std::string_view singular;
  std::string_view plural;
};

struct Verb {
  std::string_view lemma;
  std::string_view third;  // VBZ
  std::string_view past;   // VBD
};

constexpr std::array<Noun, 20> kHypernyms = {{
    {"tea", "teas"},           {"animal", "animals"},     {"language", "languages"},
    {"fruit", "fruits"},       {"microorganism", "microorganisms"},
    {"metal", "metals"},       {"river", "rivers"},       {"dog", "dogs"},
    {"bird", "birds"},         {"vehicle", "vehicles"},   {"instrument", "instruments"},
    {"spice", "spices"},       {"mineral", "minerals"},   {"country", "countries"},
    {"disease", "diseases"},   {"tool", "tools"},         {"plant", "plants"},
    {"course", "courses"},     {"company", "companies"},  {"city", "cities"},
}};

constexpr std::array<std::string_view, 14> kAdjectives = {
    "herbal", "large", "ancient", "tropical", "common", "wild", "heavy",
    "small", "modern", "rare", "local", "popular", "coastal", "domestic"};

constexpr std::array<std::string_view, 16> kNames = {
    "Latin", "Egypt", "Hibiscus", "Ceylon", "Rover", "Amazon", "Toyota",
    "Paris", "Copper", "Saturn", "Boston", "Mozart", "Kenya", "Oregon",
    "Zeus", "Orion"};

constexpr std::array<Noun, 14> kObjects = {{
    {"surface", "surfaces"},   {"water", ""},       {"energy", ""},
    {"nutrient", "nutrients"}, {"land", "lands"},        {"shelter", "shelters"},
    {"sunlight", ""},  {"attention", ""}, {"support", ""},
    {"headwater", "headwaters"}, {"tail", "tails"},      {"root", "roots"},
    {"protein", "proteins"},   {"visitor", "visitors"},
}};

constexpr std::array<Verb, 14> kVerbs = {{
    {"colonize", "colonizes", "colonized"}, {"provide", "provides", "provided"},
    {"contain", "contains", "contained"},   {"require", "requires", "required"},
    {"produce", "produces", "produced"},    {"attract", "attracts", "attracted"},
    {"need", "needs", "needed"},            {"support", "supports", "supported"},
    {"use", "uses", "used"},                {"resist", "resists", "resisted"},
    {"have", "has", "had"},                 {"absorb", "absorbs", "absorbed"},
    {"reach", "reaches", "reached"},        {"share", "shares", "shared"},
}};

constexpr std::array<std::string_view, 8> kPredicates = {
    "popular", "important", "dangerous", "useful", "rare", "able", "common", "valuable"};

struct Opener {
  std::string_view prep;
  std::string_view object;
  std::string_view object_tag;
};

constexpr std::array<Opener, 5> kOpeners = {{
    {"In", "Egypt", "NNP"}, {"During", "winter", "NN"}, {"As", "such", "JJ"},
    {"In", "general", "JJ"}, {"For", "example", "NN"}}};

constexpr std::array<std::string_view, 4> kStopModifiers = {"some", "many", "several", "other"};

constexpr std::array<std::string_view, 3> kPronouns = {"them", "it", "these"};

class Builder {
 public:
  explicit Builder(CounterRng& rng) : rng_(rng) {}

  TokenId add(std::string_view form, std::string_view lemma, std::string_view xpos,
              std::string_view deprel, TokenId head = 0) {
    Token t;
    t.id = static_cast<TokenId>(tokens_.size() + 1);
    t.form = std::string(form);
    t.lemma = lower(lemma);
    t.xpos = std::string(xpos);
    t.deprel = std::string(deprel);
    t.head = head;
    tokens_.push_back(std::move(t));
    return tokens_.back().id;
  }

  void attach(TokenId child, TokenId head) { tokens_[child - 1].head = head; }
  void relabel(TokenId id, std::string_view deprel) { tokens_[id - 1].deprel = deprel; }

  template <typename T, std::size_t N>
  const T& pick(const std::array<T, N>& table) {
    return table[rng_.below(N)];
  }
  bool chance(unsigned percent) { return rng_.below(100) < percent; }

  // Leading "In Egypt ," style phrase; returns (prep, comma) for later
  // attachment to the main verb.
  std::array<TokenId, 2> opener() {
    const Opener& o = pick(kOpeners);
    const TokenId prep = add(o.prep, o.prep, "IN", "prep");
    add(o.object, o.object, o.object_tag, "pobj", prep);
    const TokenId comma = add(",", ",", ",", "punct");
    return {prep, comma};
  }

  // [det] [adj] noun; head is attached later.
  TokenId noun_phrase(const Noun& noun, bool plural, bool det, bool adj,
                      std::string_view det_word = "the") {
    TokenId d = 0;
    TokenId a = 0;
    if (det) d = add(det_word, det_word, "DT", "det");
    if (adj) {
      const std::string_view word = pick(kAdjectives);
      a = add(word, word, "JJ", "amod");
    }
    plural = plural && !noun.plural.empty();
    const TokenId head = add(plural ? noun.plural : noun.singular, noun.singular,
                             plural ? "NNS" : "NN", "");
    if (d != 0) attach(d, head);
    if (a != 0) attach(a, head);
    return head;
  }

  // Capitalized name, compound name phrase, coordination, or bare noun.
  TokenId hyponym(std::string_view avoid) {
    switch (rng_.below(5)) {
      case 0: {
        const std::string_view name = pick(kNames);
        return add(name, name, "NNP", "");
      }
      case 1: {
        const std::string_view name = pick(kNames);
        const TokenId c = add(name, name, "NNP", "compound");
        const Noun& n = pick(kHypernyms);
        const TokenId head = add(n.singular, n.singular, "NN", "");
        attach(c, head);
        return head;
      }
      case 2: {
        const std::string_view first = pick(kNames);
        const TokenId head = add(first, first, "NNP", "");
        add("and", "and", "CC", "cc", head);
        const std::string_view second = pick(kNames);
        add(second, second, "NNP", "conj", head);
        return head;
      }
      case 3: {
        const std::string_view adj = pick(kAdjectives);
        const TokenId a = add(adj, adj, "JJ", "amod");
        const Noun& n = pick(kObjects);
        const TokenId head = add(n.singular, n.singular, "NN", "");
        attach(a, head);
        return head;
      }
      default: {
        const Noun* n = &pick(kHypernyms);
        while (n->singular == avoid) n = &pick(kHypernyms);
        return add(n->plural, n->singular, "NNS", "");
      }
    }
  }

  enum class Marker { kSuchAs, kLike, kIncluding };

  // Attaches "such as Y" / "like Y" / "including Y" to head; optional
  // commas around it.
  void hearst_branch(TokenId head, Marker marker, bool pronoun, bool commas) {
    if (commas) add(",", ",", ",", "punct", head);
    TokenId prep = 0;
    switch (marker) {
      case Marker::kSuchAs: {
        const TokenId such = add("such", "such", "JJ", "amod");
        prep = add("as", "as", "IN", "prep", head);
        attach(such, prep);
        break;
      }
      case Marker::kLike:
        prep = add("like", "like", "IN", "prep", head);
        break;
      case Marker::kIncluding:
        prep = add("including", "include", "VBG", "prep", head);
        break;
    }
    TokenId y = 0;
    if (pronoun) {
      const std::string_view p = pick(kPronouns);
      y = add(p, p, p == "these" ? "DT" : "PRP", "");
    } else {
      y = hyponym(tokens_[head - 1].lemma);
    }
    attach(y, prep);
    relabel(y, "pobj");
    if (commas) add(",", ",", ",", "punct", head);
  }

  // Verb phrase with a direct object and optional trailing PP.
  TokenId verb_phrase(std::string_view form, std::string_view lemma,
                      std::string_view xpos, std::string_view deprel, TokenId head) {
    const TokenId v = add(form, lemma, xpos, deprel, head);
    const TokenId obj = noun_phrase(pick(kObjects), chance(50), chance(40), chance(30));
    attach(obj, v);
    relabel(obj, "dobj");
    if (chance(25)) {
      const TokenId prep = add("in", "in", "IN", "prep", v);
      const TokenId pobj = noun_phrase(pick(kObjects), chance(50), true, false);
      attach(pobj, prep);
      relabel(pobj, "pobj");
    }
    return v;
  }

  // Copular or lexical main clause for a plural subject; returns the verb.
  TokenId predicate(TokenId subject, std::string_view tag = "VBP") {
    if (chance(30)) {
      const TokenId v = add(tag == "VBD" ? "were" : "are", "be", tag, "ROOT");
      if (chance(20)) add("not", "not", "RB", "neg", v);
      if (chance(30)) add("very", "very", "RB", "advmod");
      const std::string_view adj = pick(kPredicates);
      const TokenId a = add(adj, adj, "JJ", "acomp", v);
      if (tokens_[a - 2].lemma == "very") attach(a - 1, a);
      attach(subject, v);
      return v;
    }
    const Verb& verb = pick(kVerbs);
    const TokenId v = verb_phrase(tag == "VBD" ? verb.past : verb.lemma, verb.lemma,
                                  tag, "ROOT", 0);
    attach(subject, v);
    return v;
  }

  std::vector<Token> finish(TokenId root) {
    add(".", ".", ".", "punct", root);
    tokens_.front().form = capitalize(tokens_.front().form);
    return std::move(tokens_);
  }

 private:
  static std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }
  static std::string capitalize(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
  }

  CounterRng& rng_;
  std::vector<Token> tokens_;
};

using Marker = Builder::Marker;

std::vector<Token> subject_hearst(Builder& b, Marker marker, bool stop_modifier,
                                  bool pronoun, std::string_view tag) {
  std::array<TokenId, 2> open{};
  const bool has_opener = b.chance(30);
  if (has_opener) open = b.opener();
  TokenId subject = 0;
  if (stop_modifier) {
    const std::string_view mod = b.pick(kStopModifiers);
    subject = b.noun_phrase(b.pick(kHypernyms), true, true, b.chance(40), mod);
  } else {
    subject = b.noun_phrase(b.pick(kHypernyms), true, false, b.chance(50));
  }
  b.relabel(subject, "nsubj");
  b.hearst_branch(subject, marker, pronoun, b.chance(25));
  const TokenId v = b.predicate(subject, tag);
  if (has_opener) {
    b.attach(open[0], v);
    b.attach(open[1], v);
  }
  return b.finish(v);
}

std::vector<Token> object_hearst(Builder& b, Marker marker) {
  std::array<TokenId, 2> open{};
  const bool has_opener = b.chance(30);
  if (has_opener) open = b.opener();
  const TokenId subject = b.noun_phrase(b.pick(kHypernyms), true, false, b.chance(30));
  const Verb& verb = b.pick(kVerbs);
  const TokenId v = b.add(verb.lemma, verb.lemma, "VBP", "ROOT");
  b.attach(subject, v);
  b.relabel(subject, "nsubj");
  const TokenId obj = b.noun_phrase(b.pick(kHypernyms), true, b.chance(40), b.chance(60));
  b.attach(obj, v);
  b.relabel(obj, "dobj");
  b.hearst_branch(obj, marker, false, false);
  if (has_opener) {
    b.attach(open[0], v);
    b.attach(open[1], v);
  }
  return b.finish(v);
}

std::vector<Token> relative_clause(Builder& b, bool singular_head) {
  std::array<TokenId, 2> open{};
  const bool has_opener = b.chance(20);
  if (has_opener) open = b.opener();
  const TokenId subject = b.noun_phrase(b.pick(kHypernyms), !singular_head,
                                        singular_head, b.chance(30));
  b.relabel(subject, "nsubj");
  const TokenId that = b.add("that", "that", "WDT", "nsubj");
  const Verb& rel = b.pick(kVerbs);
  const TokenId rv = b.verb_phrase(singular_head ? rel.third : rel.lemma, rel.lemma,
                                   singular_head ? "VBZ" : "VBP", "relcl", subject);
  b.attach(that, rv);
  TokenId v = 0;
  if (singular_head) {
    const Verb& verb = b.pick(kVerbs);
    v = b.verb_phrase(verb.third, verb.lemma, "VBZ", "ROOT", 0);
    b.attach(subject, v);
  } else {
    v = b.predicate(subject);
  }
  if (has_opener) {
    b.attach(open[0], v);
    b.attach(open[1], v);
  }
  return b.finish(v);
}

std::vector<Token> with_phrase(Builder& b) {
  const TokenId subject = b.noun_phrase(b.pick(kHypernyms), true, false, b.chance(30));
  b.relabel(subject, "nsubj");
  const TokenId with = b.add("with", "with", "IN", "prep", subject);
  const TokenId obj = b.noun_phrase(b.pick(kObjects), true, false, b.chance(60));
  b.attach(obj, with);
  b.relabel(obj, "pobj");
  const TokenId v = b.predicate(subject);
  return b.finish(v);
}

std::vector<Token> plain(Builder& b) {
  const TokenId subject = b.noun_phrase(b.pick(kHypernyms), b.chance(50), true, b.chance(40));
  b.relabel(subject, "nsubj");
  const Verb& verb = b.pick(kVerbs);
  const TokenId v = b.verb_phrase(verb.third, verb.lemma, "VBZ", "ROOT", 0);
  b.attach(subject, v);
  return b.finish(v);
}

}  // namespace

std::string_view synth_kind_name(SynthKind kind) {
  static constexpr std::array<std::string_view, kSynthKindCount> kNamesTable = {
      "subject-such-as", "subject-like",   "subject-including", "object-such-as",
      "object-like",     "object-including", "relative-clause", "with-phrase",
      "stoplist-modifier", "pronoun-hyponym", "past-tense",     "singular-head",
      "plain"};
  return kNamesTable[static_cast<std::size_t>(kind)];
}

SynthKind synth_kind(const SynthOptions& options, std::uint64_t index) {
  CounterRng rng(derive_seed(options.seed, {index, 0x4b494e44}));
  const double u = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
  if (u < options.distractor_rate) {
    return static_cast<SynthKind>(8 + rng.below(5));
  }
  return static_cast<SynthKind>(rng.below(8));
}

ParsedSentence synth_sentence(const SynthOptions& options, std::uint64_t index) {
  const SynthKind kind = synth_kind(options, index);
  CounterRng rng(derive_seed(options.seed, {index}));
  Builder b(rng);
  std::vector<Token> tokens;
  switch (kind) {
    case SynthKind::kSubjectSuchAs:
      tokens = subject_hearst(b, Marker::kSuchAs, false, false, "VBP");
      break;
    case SynthKind::kSubjectLike:
      tokens = subject_hearst(b, Marker::kLike, false, false, "VBP");
      break;
    case SynthKind::kSubjectIncluding:
      tokens = subject_hearst(b, Marker::kIncluding, false, false, "VBP");
      break;
    case SynthKind::kObjectSuchAs: tokens = object_hearst(b, Marker::kSuchAs); break;
    case SynthKind::kObjectLike: tokens = object_hearst(b, Marker::kLike); break;
    case SynthKind::kObjectIncluding: tokens = object_hearst(b, Marker::kIncluding); break;
    case SynthKind::kRelativeClause: tokens = relative_clause(b, false); break;
    case SynthKind::kWithPhrase: tokens = with_phrase(b); break;
    case SynthKind::kStoplistModifier:
      tokens = subject_hearst(b, Marker::kSuchAs, true, false, "VBP");
      break;
    case SynthKind::kPronounHyponym:
      tokens = subject_hearst(b, Marker::kLike, false, true, "VBP");
      break;
    case SynthKind::kPastTense:
      tokens = subject_hearst(b, Marker::kSuchAs, false, false, "VBD");
      break;
    case SynthKind::kSingularHead: tokens = relative_clause(b, true); break;
    case SynthKind::kPlain: tokens = plain(b); break;
  }
  const std::size_t doc_size = options.doc_size == 0 ? 1 : options.doc_size;
  return ParsedSentence(options.doc_prefix + "-" + std::to_string(index / doc_size),
                        index % doc_size, std::move(tokens));
}

void write_synth_corpus(std::ostream& out, const SynthOptions& options,
                        std::uint64_t count) {
  for (std::uint64_t i = 0; i < count; ++i) {
    const ParsedSentence s = synth_sentence(options, i);
    write_conllu(out, s, s.sent_index() == 0);
  }
}

Corpus synth_corpus(const SynthOptions& options, std::uint64_t count) {
  Corpus corpus;
  corpus.sentences.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    corpus.sentences.push_back(synth_sentence(options, i));
  }
  return corpus;
}

}  // namespace depforge
