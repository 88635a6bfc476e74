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
// Persistent index of dependency trees keyed by bottom-up chain prefixes.
//
// A chain is the (deprel, xpos, lemma) sequence read from a token upward
// toward the root. Every prefix of length 1..D is indexed, once for each
// choice of concrete-or-wildcard lemma per step, so a pattern node without
// a lemma constraint can still be looked up.
//
// On disk an index directory holds manifest.json plus chunk-%06d.dpi files.
// Each chunk is little-endian: a fixed header, a sorted key table, varint
// delta-encoded posting lists and a compact store of the chunk's sentences.

#ifndef DEPFORGE_CHAIN_INDEX_H_
#define DEPFORGE_CHAIN_INDEX_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "depforge/conllu.h"

namespace depforge {

inline constexpr std::uint32_t kIndexFormatVersion = 1;
inline constexpr std::size_t kDefaultChunkSize = 160000;
inline constexpr unsigned kDefaultMaxDepth = 3;
inline constexpr unsigned kMaxIndexDepth = 8;

struct ChainStep {
  std::string deprel;
  std::string xpos;
  std::optional<std::string> lemma;  // nullopt is the wildcard

  auto operator<=>(const ChainStep&) const = default;
};

struct ChainKey {
  std::vector<ChainStep> steps;  // steps[0] is the starting token

  std::size_t depth() const { return steps.size(); }
  std::string encode() const;
  static ChainKey decode(std::string_view bytes);
  std::string to_string() const;  // "pobj:NN:* <- prep:IN:as"

  auto operator<=>(const ChainKey&) const = default;
};

// Every key generated by one token. Throws UsageError for unknown ids or
// max_depth outside 1..kMaxIndexDepth.
std::vector<ChainKey> chain_keys(const ParsedSentence& sentence,
                                 TokenId token_id, unsigned max_depth);

struct Posting {
  std::uint32_t chunk_id = 0;
  std::uint32_t ordinal = 0;  // sentence position inside the chunk
  TokenId token_id = 0;

  auto operator<=>(const Posting&) const = default;
};

struct IndexOptions {
  std::size_t chunk_size = kDefaultChunkSize;
  unsigned max_depth = kDefaultMaxDepth;
  unsigned workers = 1;
};

struct ChunkInfo {
  std::uint32_t id = 0;
  std::string file;
  std::uint64_t sentences = 0;
  std::uint32_t crc32 = 0;
};

struct IndexManifest {
  std::uint32_t format_version = kIndexFormatVersion;
  unsigned max_depth = kDefaultMaxDepth;
  std::size_t chunk_size = kDefaultChunkSize;
  std::uint64_t sentence_count = 0;
  std::uint32_t content_crc32 = 0;
  std::vector<SourceFile> sources;
  std::vector<ChunkInfo> chunks;

  std::string to_json() const;
  static IndexManifest from_json(std::string_view text);
};

std::string chunk_file_name(std::uint32_t chunk_id);

// Streams sentences into chunk files. Chunks are sealed every chunk_size
// sentences and written by a pool of up to options.workers threads.
//
// An existing manifest in the output directory is accepted only when it
// describes identical content and parameters; otherwise finish() throws
// IndexError and leaves the existing files untouched.
class IndexBuilder {
 public:
  IndexBuilder(std::filesystem::path dir, IndexOptions options);
  ~IndexBuilder();
  IndexBuilder(const IndexBuilder&) = delete;
  IndexBuilder& operator=(const IndexBuilder&) = delete;

  void add(const ParsedSentence& sentence);
  void add_sources(std::span<const SourceFile> sources);
  IndexManifest finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

IndexManifest build_index(const Corpus& corpus,
                          const std::filesystem::path& dir,
                          const IndexOptions& options = {});

class ChunkReader;

// Lazily decodes postings for one key across all chunks in chunk order.
class PostingStream {
 public:
  PostingStream() = default;

  // Returns false at the end of the stream.
  bool next(Posting& out);
  std::vector<Posting> collect();

 private:
  friend class DepIndex;
  struct Segment {
    std::uint32_t chunk_id;
    const std::uint8_t* cur;
    const std::uint8_t* end;
    std::uint32_t remaining;
  };
  std::vector<Segment> segments_;
  std::size_t seg_ = 0;
  std::uint32_t last_ordinal_ = 0;
  bool fresh_segment_ = true;
};

// Read-only view of an index directory. Chunk files are memory mapped; any
// number of threads may query one DepIndex concurrently.
class DepIndex {
 public:
  static DepIndex open(const std::filesystem::path& dir);

  DepIndex(DepIndex&&) noexcept;
  DepIndex& operator=(DepIndex&&) noexcept;
  ~DepIndex();

  const IndexManifest& manifest() const { return manifest_; }
  std::size_t chunk_count() const { return chunks_.size(); }
  unsigned max_depth() const { return manifest_.max_depth; }

  // Empty stream for absent keys; UsageError when the key is deeper than
  // the index.
  PostingStream lookup(const ChainKey& key) const;
  // Same, restricted to one chunk.
  PostingStream lookup_in_chunk(std::uint32_t chunk_id,
                                const ChainKey& key) const;
  std::uint64_t posting_count(const ChainKey& key) const;

  std::uint64_t chunk_sentence_count(std::uint32_t chunk_id) const;
  ParsedSentence sentence(std::uint32_t chunk_id, std::uint32_t ordinal) const;
  SentenceRef sentence_ref(std::uint32_t chunk_id, std::uint32_t ordinal) const;

  // Full CRC check of every chunk body; throws IndexError naming the chunk.
  void verify() const;

 private:
  DepIndex() = default;
  IndexManifest manifest_;
  std::vector<std::unique_ptr<ChunkReader>> chunks_;
};

}  // namespace depforge

#endif  // DEPFORGE_CHAIN_INDEX_H_
