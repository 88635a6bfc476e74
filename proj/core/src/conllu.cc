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
#include "depforge/conllu.h"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "depforge/errors.h"
#include "depforge/text_util.h"
#include "json.hpp"

namespace depforge {

ParsedSentence::ParsedSentence(std::string doc_id, std::uint64_t sent_index,
                               std::vector<Token> tokens)
    : ref_{std::move(doc_id), sent_index}, tokens_(std::move(tokens)) {
  BuildChildren();
}

void ParsedSentence::BuildChildren() {
  children_.assign(tokens_.size() + 1, {});
  for (const Token& t : tokens_) {
    if (t.head <= tokens_.size() && t.head != t.id) {
      children_[t.head].push_back(t.id);
    }
  }
}

TokenId ParsedSentence::root_id() const {
  for (const Token& t : tokens_) {
    if (t.head == 0) return t.id;
  }
  return 0;
}

std::span<const TokenId> ParsedSentence::children(TokenId id) const {
  if (id >= children_.size()) return {};
  return children_[id];
}

std::string ParsedSentence::text() const {
  std::string out;
  for (const Token& t : tokens_) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

std::optional<std::string> validate_tree(const ParsedSentence& sentence) {
  const auto tokens = sentence.tokens();
  if (tokens.empty()) return "empty sentence";
  const std::size_t n = tokens.size();
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Token& t = tokens[i];
    if (t.id != i + 1) return "non-sequential token id " + std::to_string(t.id);
    if (t.head == t.id) return "self-loop at token " + std::to_string(t.id);
    if (t.head > n) return "dangling head";
    if (t.xpos.empty()) return "empty xpos at token " + std::to_string(t.id);
    if (t.deprel.empty()) return "empty deprel at token " + std::to_string(t.id);
    if (t.head == 0) ++roots;
  }
  if (roots == 0) return "no root";
  if (roots > 1) return "multiple roots";
  // Every token must reach the root within n steps.
  for (const Token& t : tokens) {
    TokenId cur = t.id;
    std::size_t steps = 0;
    while (cur != 0) {
      if (++steps > n) return "cyclic head chain";
      cur = tokens[cur - 1].head;
    }
  }
  return std::nullopt;
}

namespace {

bool parse_uint(std::string_view s, std::uint32_t& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string_view comment_value(std::string_view line, std::string_view key) {
  // "# key = value"
  std::string_view rest = trim(line.substr(1));
  if (rest.substr(0, key.size()) != key) return {};
  rest = trim(rest.substr(key.size()));
  if (rest.empty() || rest.front() != '=') return {};
  return trim(rest.substr(1));
}

class BlockReader {
 public:
  BlockReader(std::string_view file_name, const ConlluOptions& options)
      : file_(file_name),
        doc_id_(options.default_doc_id.empty()
                    ? std::filesystem::path(file_name).stem().string()
                    : options.default_doc_id) {}

  void Line(std::string_view line, std::size_t line_no) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      Flush();
      return;
    }
    if (line.front() == '#') {
      if (auto v = comment_value(line, "newdoc id"); !v.empty()) {
        Flush();
        doc_id_ = std::string(v);
        sent_in_doc_ = 0;
      } else if (auto n = comment_value(line, "sent_index"); !n.empty()) {
        std::uint64_t index = 0;
        const auto [ptr, ec] =
            std::from_chars(n.data(), n.data() + n.size(), index);
        if (ec != std::errc() || ptr != n.data() + n.size()) {
          throw IngestError(file_, line_no, "non-numeric sent_index comment");
        }
        sent_in_doc_ = index;
      }
      return;
    }
    if (block_line_ == 0) block_line_ = line_no;

    const auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw IngestError(file_, line_no,
                        "expected 10 tab-separated columns, found " +
                            std::to_string(cols.size()));
    }
    const std::string_view id_col = cols[0];
    if (id_col.find('-') != std::string_view::npos ||
        id_col.find('.') != std::string_view::npos) {
      // Multiword token range or empty node; validate the shape only.
      return;
    }
    Token t;
    if (!parse_uint(id_col, t.id)) {
      throw IngestError(file_, line_no,
                        "non-numeric ID '" + std::string(id_col) + "'");
    }
    if (!parse_uint(cols[6], t.head)) {
      throw IngestError(file_, line_no,
                        "non-numeric HEAD '" + std::string(cols[6]) + "'");
    }
    t.form = std::string(cols[1]);
    t.lemma = ascii_lower(cols[2] == "_" && cols[1] != "_" ? cols[1] : cols[2]);
    t.xpos = cols[4] == "_" ? std::string() : std::string(cols[4]);
    t.deprel = cols[7] == "_" ? std::string() : std::string(cols[7]);
    tokens_.push_back(std::move(t));
  }

  void Flush() {
    if (tokens_.empty()) {
      block_line_ = 0;
      return;
    }
    ParsedSentence sentence(doc_id_, sent_in_doc_++, std::move(tokens_));
    tokens_.clear();
    if (auto violation = validate_tree(sentence)) {
      corpus_.skipped.push_back({file_, block_line_, *violation});
    } else {
      corpus_.sentences.push_back(std::move(sentence));
    }
    block_line_ = 0;
  }

  Corpus Take() {
    Flush();
    return std::move(corpus_);
  }

 private:
  std::string file_;
  std::string doc_id_;
  std::uint64_t sent_in_doc_ = 0;
  std::vector<Token> tokens_;
  std::size_t block_line_ = 0;
  Corpus corpus_;
};

}  // namespace

Corpus parse_conllu(std::istream& in, std::string_view file_name,
                    const ConlluOptions& options) {
  BlockReader reader(file_name, options);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    reader.Line(line, ++line_no);
  }
  return reader.Take();
}

Corpus parse_conllu_string(std::string_view text, std::string_view file_name) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in, file_name);
}

Corpus parse_conllu_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(path, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  std::istringstream stream(bytes);
  Corpus corpus = parse_conllu(stream, path);
  corpus.source_manifest.push_back({path, crc32_of(bytes), bytes.size()});
  return corpus;
}

Corpus ingest_files(std::span<const std::string> paths, unsigned workers) {
  workers = std::max(1u, workers);
  std::vector<Corpus> parts(paths.size());
  for (std::size_t begin = 0; begin < paths.size(); begin += workers) {
    const std::size_t end = std::min(paths.size(), begin + workers);
    std::vector<std::future<Corpus>> pending;
    for (std::size_t i = begin; i < end; ++i) {
      pending.push_back(std::async(std::launch::async, [&paths, i] {
        return parse_conllu_file(paths[i]);
      }));
    }
    for (std::size_t i = begin; i < end; ++i) parts[i] = pending[i - begin].get();
  }

  Corpus merged;
  std::set<SentenceRef> seen;
  for (Corpus& part : parts) {
    for (ParsedSentence& s : part.sentences) {
      if (!seen.insert(s.ref()).second) {
        throw DataError("duplicate sentence reference (" + s.doc_id() + ", " +
                        std::to_string(s.sent_index()) + ")");
      }
      merged.sentences.push_back(std::move(s));
    }
    for (auto& f : part.source_manifest) merged.source_manifest.push_back(f);
    for (auto& k : part.skipped) merged.skipped.push_back(std::move(k));
  }
  return merged;
}

void write_conllu(std::ostream& out, const ParsedSentence& sentence,
                  bool emit_doc) {
  if (emit_doc) out << "# newdoc id = " << sentence.doc_id() << '\n';
  out << "# sent_index = " << sentence.sent_index() << '\n';
  for (const Token& t : sentence.tokens()) {
    out << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.xpos << '\t'
        << t.xpos << '\t' << "_\t" << t.head << '\t' << t.deprel << "\t_\t_\n";
  }
  out << '\n';
}

std::string to_conllu(const ParsedSentence& sentence) {
  std::ostringstream out;
  write_conllu(out, sentence, true);
  return out.str();
}

void write_corpus(std::ostream& out,
                  std::span<const ParsedSentence> sentences) {
  const std::string* last_doc = nullptr;
  for (const ParsedSentence& s : sentences) {
    write_conllu(out, s, last_doc == nullptr || *last_doc != s.doc_id());
    last_doc = &s.doc_id();
  }
}

void write_skip_report(std::ostream& out, std::span<const SkipRecord> skips) {
  for (const SkipRecord& s : skips) {
    nlohmann::ordered_json j;
    j["file"] = s.file;
    j["line"] = s.line;
    j["reason"] = s.reason;
    out << j.dump() << '\n';
  }
}

}  // namespace depforge
