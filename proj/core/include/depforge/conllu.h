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
// Dependency-parsed sentences and CoNLL-U ingestion.

#ifndef DEPFORGE_CONLLU_H_
#define DEPFORGE_CONLLU_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace depforge {

using TokenId = std::uint32_t;

struct Token {
  TokenId id = 0;     // 1-based position within the sentence
  std::string form;
  std::string lemma;  // always lowercased
  std::string xpos;   // Penn Treebank tag
  TokenId head = 0;   // 0 for the root
  std::string deprel;

  bool operator==(const Token&) const = default;
};

// Identifies a sentence inside a corpus. Ordered by (doc_id, sent_index).
struct SentenceRef {
  std::string doc_id;
  std::uint64_t sent_index = 0;

  auto operator<=>(const SentenceRef&) const = default;
};

class ParsedSentence {
 public:
  ParsedSentence() = default;
  ParsedSentence(std::string doc_id, std::uint64_t sent_index,
                 std::vector<Token> tokens);

  const std::string& doc_id() const { return ref_.doc_id; }
  std::uint64_t sent_index() const { return ref_.sent_index; }
  const SentenceRef& ref() const { return ref_; }
  std::span<const Token> tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }

  // Token by 1-based id; precondition 1 <= id <= size().
  const Token& token(TokenId id) const { return tokens_[id - 1]; }
  bool contains(TokenId id) const { return id >= 1 && id <= tokens_.size(); }

  // Id of the first token with head 0, or 0 when there is none.
  TokenId root_id() const;

  // Dependents of id in surface order. Computed on construction.
  std::span<const TokenId> children(TokenId id) const;

  // Surface text joined with single spaces (no detokenization).
  std::string text() const;

  bool operator==(const ParsedSentence& other) const {
    return ref_ == other.ref_ && tokens_ == other.tokens_;
  }

 private:
  void BuildChildren();

  SentenceRef ref_;
  std::vector<Token> tokens_;
  // children_[id] lists dependents of id (index 0 is the virtual root).
  std::vector<std::vector<TokenId>> children_;
};

// Checks head links and token fields. Returns the first violated invariant,
// or nullopt when the sentence is a well-formed tree.
std::optional<std::string> validate_tree(const ParsedSentence& sentence);

struct SourceFile {
  std::string path;
  std::uint32_t crc32 = 0;
  std::uint64_t bytes = 0;
};

// One entry of the machine-readable skip report.
struct SkipRecord {
  std::string file;
  std::size_t line = 0;  // first line of the offending sentence block
  std::string reason;
};

struct Corpus {
  std::vector<ParsedSentence> sentences;
  std::vector<SourceFile> source_manifest;
  std::vector<SkipRecord> skipped;

  std::size_t total_blocks() const { return sentences.size() + skipped.size(); }
};

struct ConlluOptions {
  // Used for doc ids when the input has no "# newdoc id" comments.
  std::string default_doc_id;
};

// Parses a CoNLL-U stream. Throws IngestError on lines that are not valid
// CoNLL-U; sentences that fail validate_tree are dropped and recorded in
// Corpus::skipped instead.
Corpus parse_conllu(std::istream& in, std::string_view file_name,
                    const ConlluOptions& options = {});
Corpus parse_conllu_string(std::string_view text,
                           std::string_view file_name = "<string>");
Corpus parse_conllu_file(const std::string& path);

// Ingests several files, one worker per file (bounded by workers), and
// concatenates the results in argument order.
Corpus ingest_files(std::span<const std::string> paths, unsigned workers = 1);

// Writes the columns this library reads back out. FEATS, DEPS and MISC are
// emitted as "_"; UPOS repeats XPOS. The "# sent_index" comment makes the
// output re-ingest to an identical ParsedSentence.
void write_conllu(std::ostream& out, const ParsedSentence& sentence,
                  bool emit_doc);
std::string to_conllu(const ParsedSentence& sentence);
void write_corpus(std::ostream& out, std::span<const ParsedSentence> sentences);

// {"file":...,"line":...,"reason":...} per line.
void write_skip_report(std::ostream& out, std::span<const SkipRecord> skips);

}  // namespace depforge

#endif  // DEPFORGE_CONLLU_H_
