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
#include "depforge/templates.h"

#include <algorithm>
#include <array>
#include <fstream>

#include "depforge/errors.h"
#include "depforge/morphology.h"
#include "depforge/phrase.h"
#include "depforge/text_util.h"

namespace depforge {

namespace {

constexpr std::array<std::string_view, 6> kModifierArcs = {
    "det", "amod", "nummod", "advmod", "predet", "quantmod"};

constexpr std::array<std::string_view, 17> kPronounLemmas = {
    "it", "they", "them", "he", "she", "him", "her", "we", "us", "you", "i",
    "this", "that", "these", "those", "one", "-pron-"};

bool in(std::string_view x, auto const& table) {
  return std::find(table.begin(), table.end(), x) != table.end();
}

Expansion skip(std::string reason) {
  Expansion e;
  e.skip_reason = std::move(reason);
  return e;
}

bool contains_id(std::span<const TokenId> sorted, TokenId id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

TokenId first_word_id(const ParsedSentence& s) {
  for (const Token& t : s.tokens()) {
    if (!is_punct(t)) return t.id;
  }
  return 0;
}

bool is_proper(const Token& t) { return t.xpos == "NNP" || t.xpos == "NNPS"; }

// Surface form of a token wherever it lands in the output. The sentence's
// first word loses its capital unless it looks like a name or acronym; the
// final output is re-capitalized.
std::string form_of(const ParsedSentence& s, TokenId id) {
  const Token& t = s.token(id);
  if (id != first_word_id(s) || is_proper(t) || t.form == "I") return t.form;
  const bool rest_lower = std::none_of(t.form.begin() + (t.form.empty() ? 0 : 1),
                                       t.form.end(),
                                       [](char c) { return c >= 'A' && c <= 'Z'; });
  return rest_lower ? lowercase_first(t.form) : t.form;
}

std::string lemma_or_form(const Token& t) {
  return t.lemma.empty() || t.lemma == "_" || t.lemma == "-pron-" ? t.form : t.lemma;
}

bool is_plural_phrase(const ParsedSentence& s, TokenId head) {
  const Token& t = s.token(head);
  if (t.xpos == "NNS" || t.xpos == "NNPS") return true;
  for (const TokenId c : s.children(head)) {
    if (s.token(c).deprel == "conj") return true;
  }
  return false;
}

bool is_sentence_final(std::string_view w) {
  return w == "." || w == "!" || w == "?" || w == "," || w == ";" ||
         w == ":" || w == "-" || w == "--";
}

// Tidies punctuation left over from pruning and closes with one period.
std::string finish_sentence(std::vector<std::string> words) {
  while (!words.empty() && is_sentence_final(words.back())) words.pop_back();
  while (!words.empty() && (words.front() == "," || words.front() == ";")) {
    words.erase(words.begin());
  }
  std::vector<std::string> tidy;
  for (std::string& w : words) {
    if ((w == "," || w == ";") && !tidy.empty() &&
        (tidy.back() == "," || tidy.back() == ";")) {
      continue;
    }
    tidy.push_back(std::move(w));
  }
  tidy.emplace_back(".");
  return capitalize_first(detokenize(tidy));
}

std::vector<TokenId> strip_edge_punct(const ParsedSentence& s,
                                      std::vector<TokenId> ids) {
  while (!ids.empty() && is_punct(s.token(ids.back()))) ids.pop_back();
  std::size_t lead = 0;
  while (lead < ids.size() && is_punct(s.token(ids[lead]))) ++lead;
  ids.erase(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(lead));
  return ids;
}

// Punctuation dependents of head that sit right next to a removed span.
void drop_adjacent_punct(const ParsedSentence& s, TokenId head,
                         std::span<const TokenId> removed,
                         std::set<TokenId>& drop) {
  if (removed.empty()) return;
  for (const TokenId c : s.children(head)) {
    if (is_punct(s.token(c)) &&
        (c + 1 == removed.front() || c == removed.back() + 1)) {
      drop.insert(c);
    }
  }
}

std::vector<std::string> forms(const ParsedSentence& s,
                               std::span<const TokenId> ids) {
  std::vector<std::string> out;
  for (const TokenId id : ids) out.push_back(form_of(s, id));
  return out;
}

void append(std::vector<std::string>& out, const std::vector<std::string>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

bool is_verb_tag(std::string_view xpos) { return xpos.starts_with("VB") || xpos == "MD"; }

std::string source_sentence(const ParsedSentence& s) {
  std::vector<TokenId> all;
  for (const Token& t : s.tokens()) all.push_back(t.id);
  return finish_sentence(forms(s, all));
}

}  // namespace

// ---------------------------------------------------------------------------
// Stoplist and filtering

ModifierStoplist::ModifierStoplist(const std::set<std::string>& lemmas) {
  for (const std::string& l : lemmas) lemmas_.insert(ascii_lower(l));
}

ModifierStoplist ModifierStoplist::defaults() {
  return ModifierStoplist({"some", "many", "most", "several", "few", "certain",
                           "other", "various", "numerous", "all", "no"});
}

ModifierStoplist ModifierStoplist::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open stoplist " + path.string());
  std::set<std::string> lemmas;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    lemmas.insert(std::string(body));
  }
  return ModifierStoplist(lemmas);
}

bool ModifierStoplist::contains(std::string_view lemma) const {
  return lemmas_.find(ascii_lower(lemma)) != lemmas_.end();
}

FilterDecision filter_match(const MatchBinding& match,
                            const ParsedSentence& sentence,
                            const ModifierStoplist& stoplist) {
  if (const auto it = match.bindings.find(0); it != match.bindings.end()) {
    for (const TokenId c : sentence.children(it->second)) {
      const Token& mod = sentence.token(c);
      if (in(mod.deprel, kModifierArcs) && stoplist.contains(mod.lemma)) {
        return {false, "disallowed modifier: " + mod.lemma};
      }
    }
  }
  if (const auto it = match.bindings.find(1); it != match.bindings.end()) {
    const Token& t = sentence.token(it->second);
    const bool pronoun_tag = t.xpos == "PRP" || t.xpos == "PRP$" ||
                             t.xpos == "WP" || t.xpos == "WP$" || t.xpos == "EX";
    const bool bare_pronoun = in(t.lemma, kPronounLemmas) &&
                              !is_verb_tag(t.xpos) &&
                              subtree_ids(sentence, t.id).size() == 1;
    if (pronoun_tag || bare_pronoun) return {false, "pronoun capture"};
  }
  for (const auto& [capture, token] : match.bindings) {
    if (extract_subtree(sentence, token).text.size() == 1) {
      return {false, "single-character capture $" + std::to_string(capture)};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Verb phrases

std::string VerbPhrase::text() const { return detokenize(forms()); }

std::vector<std::string> VerbPhrase::forms() const {
  std::vector<std::string> out;
  for (const VpWord& w : words) out.push_back(w.form);
  return out;
}

VerbPhrase verb_phrase_from(const ParsedSentence& sentence, TokenId head,
                            std::span<const TokenId> ids, bool subject_plural) {
  VerbPhrase vp;
  vp.subject_plural = subject_plural;
  for (const TokenId id : ids) {
    const Token& t = sentence.token(id);
    vp.words.push_back({form_of(sentence, id), t.lemma, t.xpos, t.deprel,
                        id == head, t.head == head, std::nullopt, std::nullopt});
  }
  return vp;
}

VerbPhrase negate(const VerbPhrase& input) {
  VerbPhrase vp = input;
  auto& words = vp.words;
  const auto head_it = std::find_if(words.begin(), words.end(),
                                    [](const VpWord& w) { return w.is_head; });
  if (head_it == words.end()) return vp;
  std::size_t head = static_cast<std::size_t>(head_it - words.begin());

  const auto is_neg = [](const VpWord& w) {
    return w.head_child && (w.deprel == "neg" || w.lemma == "not" || w.lemma == "n't");
  };
  if (const auto neg = std::find_if(words.begin(), words.end(), is_neg);
      neg != words.end()) {
    words.erase(neg);
    const auto do_aux = std::find_if(words.begin(), words.end(), [](const VpWord& w) {
      return w.head_child && (w.deprel == "aux") && w.lemma == "do";
    });
    if (do_aux != words.end()) {
      const std::string aux = ascii_lower(do_aux->form);
      VpWord& h = *std::find_if(words.begin(), words.end(),
                                [](const VpWord& w) { return w.is_head; });
      // "did" is only undone when the past form is known.
      if (aux == "do" || aux == "does" || (aux == "did" && h.prior_form)) {
        if (h.prior_form) {
          h.form = *h.prior_form;
          h.xpos = h.prior_xpos.value_or(h.xpos);
          h.prior_form.reset();
          h.prior_xpos.reset();
        } else {
          const bool third = aux == "does";
          h.form = reinflect_verb(h.lemma.empty() ? h.form : h.lemma,
                                  third ? VerbTarget::kSingular3rd : VerbTarget::kPlural);
          h.xpos = third ? "VBZ" : "VBP";
        }
        words.erase(do_aux);
      }
    }
    return vp;
  }

  const VpWord not_word{"not", "not", "RB", "neg", false, true, std::nullopt, std::nullopt};
  const VpWord& h = words[head];
  const bool finite_be = h.lemma == "be" &&
                         (h.xpos == "VBP" || h.xpos == "VBZ" || h.xpos == "VBD");
  if (finite_be) {
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(head) + 1, not_word);
    return vp;
  }
  for (std::size_t i = 0; i < head; ++i) {
    if (words[i].head_child &&
        (words[i].deprel == "aux" || words[i].deprel == "auxpass" || words[i].xpos == "MD")) {
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(i) + 1, not_word);
      return vp;
    }
  }

  std::string aux = vp.subject_plural ? "do" : "does";
  if (h.xpos == "VBZ") aux = "does";
  if (h.xpos == "VBP") aux = "do";
  if (h.xpos == "VBD") aux = "did";
  VpWord& verb = words[head];
  verb.prior_form = verb.form;
  verb.prior_xpos = verb.xpos;
  if (verb.xpos == "VBD") {
    if (!verb.lemma.empty()) verb.form = verb.lemma;
  } else {
    verb.form = reinflect_verb(verb.lemma.empty() ? verb.form : verb.lemma,
                               VerbTarget::kBase);
  }
  verb.xpos = "VB";
  const std::string aux_xpos = aux == "does" ? "VBZ" : aux == "did" ? "VBD" : "VBP";
  words.insert(words.begin() + static_cast<std::ptrdiff_t>(head), not_word);
  words.insert(words.begin() + static_cast<std::ptrdiff_t>(head),
               VpWord{aux, "do", aux_xpos, "aux", false, true, std::nullopt, std::nullopt});
  return vp;
}

const std::set<std::string, std::less<>>& template_lexicon() {
  static const std::set<std::string, std::less<>> kLexicon = {
      "is", "are", "a", "an", "that", "do", "does", "not", "have", "has"};
  return kLexicon;
}

// ---------------------------------------------------------------------------
// Substitution

Expansion expand_substitution(const MatchBinding& match,
                              const ParsedSentence& s) {
  if (!match.bindings.contains(0) || !match.bindings.contains(1)) {
    return skip("binding lacks $0 or $1");
  }
  const TokenId t0 = match.at(0);
  const TokenId t1 = match.at(1);
  const TokenId t2 = match.bindings.contains(2) ? match.at(2) : s.root_id();

  const std::vector<TokenId> sub0 = subtree_ids(s, t0);
  if (sub0.size() == s.size()) return skip("hypernym phrase covers the whole sentence");
  if (t1 == t0 || !contains_id(sub0, t1)) {
    return skip("hyponym is not inside the hypernym phrase");
  }
  TokenId branch = t1;
  while (s.token(branch).head != t0) branch = s.token(branch).head;
  const std::vector<TokenId> pruned = subtree_ids(s, branch);
  const std::vector<TokenId> sub1 = strip_edge_punct(s, subtree_ids(s, t1));
  if (!is_contiguous(sub0) || !is_contiguous(pruned) || !is_contiguous(sub1)) {
    return skip("non-projective phrase");
  }
  if (sub1.empty()) return skip("empty hyponym phrase");

  std::set<TokenId> drop(pruned.begin(), pruned.end());
  drop_adjacent_punct(s, t0, pruned, drop);

  // Premise 1: the source without the such-as branch.
  std::vector<std::string> premise1;
  for (const Token& t : s.tokens()) {
    if (!drop.contains(t.id)) premise1.push_back(form_of(s, t.id));
  }

  // Premise 2: "<$1> is a <$0 core>."
  std::vector<TokenId> core;
  for (const TokenId id : sub0) {
    if (drop.contains(id)) continue;
    const Token& t = s.token(id);
    if (t.head == t0 && (t.deprel == "det" || t.deprel == "predet" || is_punct(t))) continue;
    core.push_back(id);
  }
  core = strip_edge_punct(s, std::move(core));
  const auto head_pos = std::find(core.begin(), core.end(), t0);
  if (head_pos == core.end()) return skip("empty hypernym core");
  std::vector<std::string> core_words = forms(s, core);
  const bool plural1 = is_plural_phrase(s, t1);
  std::vector<std::string> premise2 = forms(s, sub1);
  if (plural1) {
    premise2.emplace_back("are");
    append(premise2, core_words);
  } else {
    std::string& head_word = core_words[static_cast<std::size_t>(head_pos - core.begin())];
    head_word = singularize_noun(head_word);
    premise2.emplace_back("is");
    premise2.emplace_back(indefinite_article(core_words.front()));
    append(premise2, core_words);
  }

  // Conclusion: $1 in $0's slot, subject-verb agreement restored.
  std::set<TokenId> reinflect;
  const Token& hyper = s.token(t0);
  if (hyper.deprel.starts_with("nsubj") && hyper.head == t2 && t2 != 0) {
    const auto finite = [&](TokenId id) {
      return s.token(id).xpos == "VBP" || s.token(id).xpos == "VBZ";
    };
    if (finite(t2)) {
      reinflect.insert(t2);
      for (const TokenId c : s.children(t2)) {
        if (s.token(c).deprel == "conj" && finite(c)) reinflect.insert(c);
      }
    } else {
      for (const TokenId c : s.children(t2)) {
        const std::string& rel = s.token(c).deprel;
        if ((rel == "aux" || rel == "auxpass") && finite(c)) {
          reinflect.insert(c);
          break;
        }
      }
    }
  }
  const VerbTarget target = plural1 ? VerbTarget::kPlural : VerbTarget::kSingular3rd;
  std::vector<std::string> conclusion;
  for (const Token& t : s.tokens()) {
    if (contains_id(sub0, t.id)) {
      if (t.id == sub0.front()) append(conclusion, forms(s, sub1));
      continue;
    }
    if (reinflect.contains(t.id)) {
      std::string form = reinflect_verb(lemma_or_form(t), target);
      if (!t.form.empty() && t.form[0] >= 'A' && t.form[0] <= 'Z') {
        form = capitalize_first(form);
      }
      conclusion.push_back(std::move(form));
    } else {
      conclusion.push_back(form_of(s, t.id));
    }
  }

  DeductionExample example;
  example.op = Operation::kSubstitution;
  example.premises = {finish_sentence(premise1), finish_sentence(premise2)};
  example.conclusion = finish_sentence(conclusion);
  example.provenance.sentence = s.ref();
  example.provenance.pattern_id = match.pattern_id;
  example.provenance.bindings = match.bindings;
  return {std::move(example), {}};
}

// ---------------------------------------------------------------------------
// Contraposition

Expansion expand_contraposition(const MatchBinding& match,
                                const ParsedSentence& s) {
  if (!match.bindings.contains(0) || !match.bindings.contains(1)) {
    return skip("binding lacks $0 or $1");
  }
  const TokenId t0 = match.at(0);
  const TokenId t1 = match.at(1);
  const TokenId t2 = match.bindings.contains(2) ? match.at(2) : s.root_id();

  const Token& r = s.token(t1);
  TokenId branch = 0;
  bool with_variant = false;
  if (r.head == t0 && r.deprel == "relcl") {
    branch = t1;
  } else if (r.head != 0 && s.token(r.head).lemma == "with" &&
             s.token(r.head).head == t0) {
    branch = r.head;
    with_variant = true;
  } else {
    return skip("restrictor is neither a relative clause nor a with-phrase");
  }

  const std::vector<TokenId> sub0 = subtree_ids(s, t0);
  const std::vector<TokenId> restrictor_span = subtree_ids(s, branch);
  if (!is_contiguous(sub0) || !is_contiguous(restrictor_span)) {
    return skip("non-projective phrase");
  }
  if (t2 == 0 || contains_id(sub0, t2)) {
    return skip("matrix VP lacking identifiable head verb");
  }

  std::set<TokenId> drop(restrictor_span.begin(), restrictor_span.end());
  drop_adjacent_punct(s, t0, restrictor_span, drop);
  std::vector<TokenId> core;
  for (const TokenId id : sub0) {
    if (!drop.contains(id)) core.push_back(id);
  }
  core = strip_edge_punct(s, std::move(core));
  if (core.empty()) return skip("empty subject phrase");

  std::vector<TokenId> prefix;
  std::vector<TokenId> matrix;
  for (const Token& t : s.tokens()) {
    if (t.id < sub0.front()) prefix.push_back(t.id);
    if (t.id > sub0.back()) matrix.push_back(t.id);
  }
  matrix = strip_edge_punct(s, std::move(matrix));
  if (!contains_id(matrix, t2) || !is_verb_tag(s.token(t2).xpos)) {
    return skip("matrix VP lacking identifiable head verb");
  }

  const bool plural = is_plural_phrase(s, t0);
  const VerbPhrase matrix_vp = verb_phrase_from(s, t2, matrix, plural);
  VerbPhrase restrictor_vp;
  if (with_variant) {
    restrictor_vp.subject_plural = plural;
    restrictor_vp.words.push_back({plural ? "have" : "has", "have",
                                   plural ? "VBP" : "VBZ", "relcl", true, false,
                                   std::nullopt, std::nullopt});
    const std::vector<TokenId> object = strip_edge_punct(s, subtree_ids(s, t1));
    for (const TokenId id : object) {
      const Token& t = s.token(id);
      restrictor_vp.words.push_back({form_of(s, id), t.lemma, t.xpos, t.deprel,
                                     false, false, std::nullopt, std::nullopt});
    }
  } else {
    std::vector<TokenId> ids;
    for (const TokenId id : restrictor_span) {
      const Token& t = s.token(id);
      const bool relative_subject =
          t.head == t1 && t.deprel.starts_with("nsubj") &&
          (t.xpos == "WDT" || t.xpos == "WP" || t.lemma == "that" ||
           t.lemma == "which" || t.lemma == "who");
      if (!relative_subject) ids.push_back(id);
    }
    ids = strip_edge_punct(s, std::move(ids));
    if (!contains_id(ids, t1) || !is_verb_tag(r.xpos)) {
      return skip("restrictor VP lacking identifiable head verb");
    }
    restrictor_vp = verb_phrase_from(s, t1, ids, plural);
  }

  std::vector<std::string> conclusion = forms(s, prefix);
  append(conclusion, forms(s, core));
  conclusion.emplace_back("that");
  append(conclusion, negate(matrix_vp).forms());
  append(conclusion, negate(restrictor_vp).forms());

  DeductionExample example;
  example.op = Operation::kContraposition;
  example.premises = {source_sentence(s)};
  example.conclusion = finish_sentence(conclusion);
  example.provenance.sentence = s.ref();
  example.provenance.pattern_id = match.pattern_id;
  example.provenance.bindings = match.bindings;
  return {std::move(example), {}};
}

Expansion expand(Operation op, const MatchBinding& match,
                 const ParsedSentence& sentence) {
  return op == Operation::kSubstitution ? expand_substitution(match, sentence)
                                        : expand_contraposition(match, sentence);
}

}  // namespace depforge
