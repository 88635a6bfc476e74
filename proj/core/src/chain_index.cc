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
#include "depforge/chain_index.h"

#include <algorithm>
#include <array>
#include <deque>
#include <fstream>
#include <future>
#include <unordered_map>

#include "depforge/errors.h"
#include "depforge/text_util.h"
#include "internal/binary_io.h"
#include "internal/mapped_file.h"
#include "json.hpp"

namespace depforge {

namespace fs = std::filesystem;
using internal::ByteReader;

namespace {

constexpr char kFieldSep = '\x1f';
constexpr char kStepSep = '\x1e';
constexpr char kWildcard = '\x01';
constexpr char kMagic[4] = {'D', 'P', 'I', 'X'};

// Header layout.
constexpr std::size_t kOffVersion = 4;
constexpr std::size_t kOffChunkId = 8;
constexpr std::size_t kOffMaxDepth = 12;
constexpr std::size_t kOffSentenceCount = 16;
constexpr std::size_t kOffKeyCount = 24;
constexpr std::size_t kOffKeyTable = 32;
constexpr std::size_t kOffKeyBlob = 40;
constexpr std::size_t kOffPostings = 48;
constexpr std::size_t kOffSentenceIndex = 56;
constexpr std::size_t kOffSentenceData = 64;
constexpr std::size_t kOffBodyCrc = 72;
constexpr std::size_t kHeaderSize = 80;
constexpr std::size_t kKeyEntrySize = 24;

void append_step(std::string& out, const std::string& deprel,
                 const std::string& xpos, const std::string* lemma) {
  out += deprel;
  out += kFieldSep;
  out += xpos;
  out += kFieldSep;
  if (lemma != nullptr) {
    out += *lemma;
  } else {
    out += kWildcard;
  }
}

void check_depth(unsigned max_depth) {
  if (max_depth == 0 || max_depth > kMaxIndexDepth) {
    throw UsageError("max_depth must lie in 1.." + std::to_string(kMaxIndexDepth));
  }
}

// Calls fn(encoded_key) for every key generated by token_id: depth by depth,
// and within a depth in binary order with step 1 most significant and the
// concrete lemma before the wildcard.
template <typename Fn>
void for_each_encoded_key(const ParsedSentence& sentence, TokenId token_id,
                          unsigned max_depth, Fn&& fn) {
  std::array<std::array<std::string, 2>, kMaxIndexDepth> steps;
  std::string key;
  unsigned depth = 0;
  for (TokenId cur = token_id; depth < max_depth && cur != 0; ++depth) {
    const Token& t = sentence.token(cur);
    steps[depth][0].clear();
    steps[depth][1].clear();
    append_step(steps[depth][0], t.deprel, t.xpos, &t.lemma);
    append_step(steps[depth][1], t.deprel, t.xpos, nullptr);
    const unsigned len = depth + 1;
    for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
      key.clear();
      for (unsigned j = 0; j < len; ++j) {
        if (j > 0) key += kStepSep;
        key += steps[j][(mask >> (len - 1 - j)) & 1u];
      }
      fn(std::string_view(key));
    }
    cur = t.head;
  }
}

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

void encode_sentence(std::string& out, const ParsedSentence& sentence) {
  internal::put_string(out, sentence.doc_id());
  internal::put_varint(out, sentence.sent_index());
  internal::put_varint(out, sentence.size());
  for (const Token& t : sentence.tokens()) {
    internal::put_string(out, t.form);
    internal::put_string(out, t.lemma);
    internal::put_string(out, t.xpos);
    internal::put_string(out, t.deprel);
    internal::put_varint(out, t.head);
  }
}

std::optional<ParsedSentence> decode_sentence(ByteReader& in) {
  std::string doc_id;
  if (!in.string(doc_id)) return std::nullopt;
  const auto sent_index = in.varint();
  const auto count = in.varint();
  if (!sent_index || !count || *count > (1u << 20)) return std::nullopt;
  std::vector<Token> tokens(*count);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& t = tokens[i];
    t.id = static_cast<TokenId>(i + 1);
    if (!in.string(t.form) || !in.string(t.lemma) || !in.string(t.xpos) ||
        !in.string(t.deprel)) {
      return std::nullopt;
    }
    const auto head = in.varint();
    if (!head || *head > tokens.size()) return std::nullopt;
    t.head = static_cast<TokenId>(*head);
  }
  return ParsedSentence(std::move(doc_id), *sent_index, std::move(tokens));
}

struct PendingChunk {
  std::uint32_t id = 0;
  std::string records;
  std::vector<std::uint64_t> offsets{0};
};

// A chain key as a tuple of interned step ids; cheaper to hash than text.
struct PackedKey {
  std::array<std::uint32_t, kMaxIndexDepth> steps{};
  std::uint32_t len = 0;

  bool operator==(const PackedKey&) const = default;
};

struct PackedKeyHash {
  std::size_t operator()(const PackedKey& k) const {
    std::uint64_t h = k.len;
    for (std::uint32_t i = 0; i < k.len; ++i) {
      h = (h ^ k.steps[i]) * 0x9e3779b97f4a7c15ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

class StepTable {
 public:
  std::uint32_t intern(const Token& t, bool wildcard) {
    scratch_.clear();
    append_step(scratch_, t.deprel, t.xpos, wildcard ? nullptr : &t.lemma);
    const auto it = ids_.find(std::string_view(scratch_));
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(text_.size());
    text_.push_back(scratch_);
    ids_.emplace(scratch_, id);
    return id;
  }

  std::string encode(const PackedKey& key) const {
    std::string out;
    for (std::uint32_t i = 0; i < key.len; ++i) {
      if (i > 0) out += kStepSep;
      out += text_[key.steps[i]];
    }
    return out;
  }

 private:
  std::string scratch_;
  std::vector<std::string> text_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> ids_;
};

std::string serialize_chunk(const PendingChunk& chunk, unsigned max_depth) {
  const std::size_t count = chunk.offsets.size() - 1;
  StepTable steps;
  std::unordered_map<PackedKey, std::vector<std::uint64_t>, PackedKeyHash> postings;
  std::array<std::array<std::uint32_t, 2>, kMaxIndexDepth> chain{};
  for (std::size_t ordinal = 0; ordinal < count; ++ordinal) {
    const auto* base =
        reinterpret_cast<const std::uint8_t*>(chunk.records.data());
    ByteReader in(base + chunk.offsets[ordinal], base + chunk.offsets[ordinal + 1]);
    const auto sentence = decode_sentence(in);
    // Same enumeration order as for_each_encoded_key.
    for (const Token& t : sentence->tokens()) {
      const std::uint64_t packed = (std::uint64_t{ordinal} << 32) | t.id;
      unsigned depth = 0;
      for (TokenId cur = t.id; depth < max_depth && cur != 0; ++depth) {
        const Token& step = sentence->token(cur);
        chain[depth] = {steps.intern(step, false), steps.intern(step, true)};
        const unsigned len = depth + 1;
        PackedKey key;
        key.len = len;
        for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
          for (unsigned j = 0; j < len; ++j) {
            key.steps[j] = chain[j][(mask >> (len - 1 - j)) & 1u];
          }
          postings[key].push_back(packed);
        }
        cur = step.head;
      }
    }
  }

  std::vector<std::pair<std::string, const std::vector<std::uint64_t>*>> sorted;
  sorted.reserve(postings.size());
  for (const auto& [key, list] : postings) sorted.emplace_back(steps.encode(key), &list);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::string blob;
  std::string posting_bytes;
  std::string table;
  table.reserve(sorted.size() * kKeyEntrySize);
  for (const auto& [key_text, list] : sorted) {
    const std::size_t posting_start = posting_bytes.size();
    std::uint32_t last = 0;
    bool first = true;
    for (const std::uint64_t packed : *list) {
      const auto ordinal = static_cast<std::uint32_t>(packed >> 32);
      const auto token = static_cast<std::uint32_t>(packed & 0xffffffffu);
      internal::put_varint(posting_bytes, first ? ordinal : ordinal - last);
      internal::put_varint(posting_bytes, token);
      last = ordinal;
      first = false;
    }
    internal::put_u32(table, static_cast<std::uint32_t>(blob.size()));
    internal::put_u32(table, static_cast<std::uint32_t>(key_text.size()));
    internal::put_u64(table, posting_start);
    internal::put_u32(table, static_cast<std::uint32_t>(list->size()));
    internal::put_u32(table,
                      static_cast<std::uint32_t>(posting_bytes.size() - posting_start));
    blob += key_text;
  }

  std::string out(kHeaderSize, '\0');
  std::copy(std::begin(kMagic), std::end(kMagic), out.begin());
  internal::patch_u32(out, kOffVersion, kIndexFormatVersion);
  internal::patch_u32(out, kOffChunkId, chunk.id);
  internal::patch_u32(out, kOffMaxDepth, max_depth);
  internal::patch_u64(out, kOffSentenceCount, count);
  internal::patch_u64(out, kOffKeyCount, sorted.size());
  internal::patch_u64(out, kOffKeyTable, out.size());
  out += table;
  internal::patch_u64(out, kOffKeyBlob, out.size());
  out += blob;
  internal::patch_u64(out, kOffPostings, out.size());
  out += posting_bytes;
  internal::patch_u64(out, kOffSentenceIndex, out.size());
  for (const std::uint64_t offset : chunk.offsets) internal::put_u64(out, offset);
  internal::patch_u64(out, kOffSentenceData, out.size());
  out += chunk.records;
  internal::patch_u32(
      out, kOffBodyCrc,
      crc32_of(std::string_view(out).substr(kHeaderSize)));
  return out;
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw IndexError("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexError("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

std::string ChainKey::encode() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) out += kStepSep;
    append_step(out, steps[i].deprel, steps[i].xpos,
                steps[i].lemma ? &*steps[i].lemma : nullptr);
  }
  return out;
}

ChainKey ChainKey::decode(std::string_view bytes) {
  ChainKey key;
  for (std::string_view step : split(bytes, kStepSep)) {
    const auto fields = split(step, kFieldSep);
    if (fields.size() != 3) throw IndexError("malformed chain key");
    ChainStep s{std::string(fields[0]), std::string(fields[1]), std::nullopt};
    if (fields[2] != std::string_view(&kWildcard, 1)) s.lemma = std::string(fields[2]);
    key.steps.push_back(std::move(s));
  }
  return key;
}

std::string ChainKey::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0) out += " <- ";
    out += steps[i].deprel + ":" + steps[i].xpos + ":" +
           steps[i].lemma.value_or("*");
  }
  return out;
}

std::vector<ChainKey> chain_keys(const ParsedSentence& sentence,
                                 TokenId token_id, unsigned max_depth) {
  check_depth(max_depth);
  if (!sentence.contains(token_id)) {
    throw UsageError("unknown token id " + std::to_string(token_id));
  }
  std::vector<ChainKey> keys;
  for_each_encoded_key(sentence, token_id, max_depth, [&](std::string_view k) {
    keys.push_back(ChainKey::decode(k));
  });
  return keys;
}

std::string chunk_file_name(std::uint32_t chunk_id) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "chunk-%06u.dpi", chunk_id);
  return buf;
}

// ---------------------------------------------------------------------------
// Manifest

std::string IndexManifest::to_json() const {
  nlohmann::ordered_json j;
  j["format_version"] = format_version;
  j["max_depth"] = max_depth;
  j["chunk_size"] = chunk_size;
  j["sentence_count"] = sentence_count;
  j["content_crc32"] = content_crc32;
  j["sources"] = nlohmann::ordered_json::array();
  for (const SourceFile& s : sources) {
    j["sources"].push_back({{"path", s.path}, {"crc32", s.crc32}, {"bytes", s.bytes}});
  }
  j["chunks"] = nlohmann::ordered_json::array();
  for (const ChunkInfo& c : chunks) {
    j["chunks"].push_back({{"id", c.id},
                           {"file", c.file},
                           {"sentences", c.sentences},
                           {"crc32", c.crc32}});
  }
  return j.dump(2) + "\n";
}

IndexManifest IndexManifest::from_json(std::string_view text) {
  IndexManifest m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.format_version = j.at("format_version").get<std::uint32_t>();
    if (m.format_version != kIndexFormatVersion) {
      throw IndexError("unsupported index format version " +
                       std::to_string(m.format_version));
    }
    m.max_depth = j.at("max_depth").get<unsigned>();
    m.chunk_size = j.at("chunk_size").get<std::size_t>();
    m.sentence_count = j.at("sentence_count").get<std::uint64_t>();
    m.content_crc32 = j.at("content_crc32").get<std::uint32_t>();
    for (const auto& s : j.at("sources")) {
      m.sources.push_back({s.at("path").get<std::string>(),
                           s.at("crc32").get<std::uint32_t>(),
                           s.at("bytes").get<std::uint64_t>()});
    }
    for (const auto& c : j.at("chunks")) {
      m.chunks.push_back({c.at("id").get<std::uint32_t>(),
                          c.at("file").get<std::string>(),
                          c.at("sentences").get<std::uint64_t>(),
                          c.at("crc32").get<std::uint32_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw IndexError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

// ---------------------------------------------------------------------------
// Builder

struct IndexBuilder::Impl {
  fs::path dir;
  IndexOptions options;
  PendingChunk pending;
  std::uint32_t next_chunk = 0;
  std::uint64_t sentence_count = 0;
  std::uint32_t content_crc = 0;
  std::vector<SourceFile> sources;
  std::deque<std::future<ChunkInfo>> in_flight;
  std::vector<ChunkInfo> done;
  bool finished = false;

  void Seal() {
    if (pending.offsets.size() <= 1) return;
    PendingChunk chunk = std::move(pending);
    pending = PendingChunk{};
    pending.id = ++next_chunk;
    while (in_flight.size() >= std::max(1u, options.workers)) {
      done.push_back(in_flight.front().get());
      in_flight.pop_front();
    }
    in_flight.push_back(std::async(
        std::launch::async,
        [chunk = std::move(chunk), dir = dir, depth = options.max_depth] {
          const std::string bytes = serialize_chunk(chunk, depth);
          ChunkInfo info;
          info.id = chunk.id;
          info.file = chunk_file_name(chunk.id);
          info.sentences = chunk.offsets.size() - 1;
          info.crc32 = crc32_of(bytes);
          write_file(dir / (info.file + ".tmp"), bytes);
          return info;
        }));
  }

  void Drain() {
    while (!in_flight.empty()) {
      done.push_back(in_flight.front().get());
      in_flight.pop_front();
    }
  }

  void RemoveTemps() {
    std::error_code ec;
    for (const ChunkInfo& c : done) fs::remove(dir / (c.file + ".tmp"), ec);
  }
};

IndexBuilder::IndexBuilder(fs::path dir, IndexOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (options.chunk_size == 0) throw UsageError("chunk_size must be positive");
  check_depth(options.max_depth);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IndexError("cannot create index directory " + dir.string());
  }
  impl_->dir = std::move(dir);
  impl_->options = options;
}

IndexBuilder::~IndexBuilder() {
  if (impl_ && !impl_->finished) {
    try {
      impl_->Drain();
    } catch (...) {
    }
    impl_->RemoveTemps();
  }
}

void IndexBuilder::add(const ParsedSentence& sentence) {
  PendingChunk& p = impl_->pending;
  const std::size_t before = p.records.size();
  encode_sentence(p.records, sentence);
  impl_->content_crc = crc32_of(std::string_view(p.records).substr(before),
                                impl_->content_crc);
  p.offsets.push_back(p.records.size());
  ++impl_->sentence_count;
  if (p.offsets.size() - 1 >= impl_->options.chunk_size) impl_->Seal();
}

void IndexBuilder::add_sources(std::span<const SourceFile> sources) {
  impl_->sources.insert(impl_->sources.end(), sources.begin(), sources.end());
}

IndexManifest IndexBuilder::finish() {
  impl_->Seal();
  try {
    impl_->Drain();
  } catch (...) {
    impl_->RemoveTemps();
    impl_->finished = true;
    throw;
  }
  impl_->finished = true;

  IndexManifest manifest;
  manifest.max_depth = impl_->options.max_depth;
  manifest.chunk_size = impl_->options.chunk_size;
  manifest.sentence_count = impl_->sentence_count;
  manifest.content_crc32 = impl_->content_crc;
  manifest.sources = impl_->sources;
  manifest.chunks = impl_->done;

  const fs::path manifest_path = impl_->dir / "manifest.json";
  if (fs::exists(manifest_path)) {
    const IndexManifest existing = IndexManifest::from_json(read_file(manifest_path));
    if (existing.content_crc32 != manifest.content_crc32 ||
        existing.sentence_count != manifest.sentence_count ||
        existing.max_depth != manifest.max_depth ||
        existing.chunk_size != manifest.chunk_size) {
      impl_->RemoveTemps();
      throw IndexError("checksum mismatch against existing manifest in " +
                       impl_->dir.string());
    }
  }
  for (const ChunkInfo& c : manifest.chunks) {
    fs::rename(impl_->dir / (c.file + ".tmp"), impl_->dir / c.file);
  }
  const fs::path tmp = impl_->dir / "manifest.json.tmp";
  write_file(tmp, manifest.to_json());
  fs::rename(tmp, manifest_path);
  return manifest;
}

IndexManifest build_index(const Corpus& corpus, const fs::path& dir,
                          const IndexOptions& options) {
  IndexBuilder builder(dir, options);
  builder.add_sources(corpus.source_manifest);
  for (const ParsedSentence& s : corpus.sentences) builder.add(s);
  return builder.finish();
}

// ---------------------------------------------------------------------------
// Reader

class ChunkReader {
 public:
  ChunkReader(const fs::path& path, std::uint32_t expected_id,
              unsigned expected_depth)
      : id_(expected_id), file_(path.string()) {
    const std::uint8_t* d = file_.data();
    const std::size_t n = file_.size();
    if (n < kHeaderSize || !std::equal(std::begin(kMagic), std::end(kMagic), d)) {
      throw IndexError(id_, "bad magic or truncated header");
    }
    if (internal::get_u32(d + kOffVersion) != kIndexFormatVersion) {
      throw IndexError(id_, "unsupported chunk version " +
                                std::to_string(internal::get_u32(d + kOffVersion)));
    }
    if (internal::get_u32(d + kOffChunkId) != expected_id) {
      throw IndexError(id_, "chunk id does not match manifest");
    }
    if (internal::get_u32(d + kOffMaxDepth) != expected_depth) {
      throw IndexError(id_, "max depth does not match manifest");
    }
    sentence_count_ = internal::get_u64(d + kOffSentenceCount);
    key_count_ = internal::get_u64(d + kOffKeyCount);
    const std::uint64_t key_table = internal::get_u64(d + kOffKeyTable);
    const std::uint64_t key_blob = internal::get_u64(d + kOffKeyBlob);
    const std::uint64_t postings = internal::get_u64(d + kOffPostings);
    const std::uint64_t sentence_index = internal::get_u64(d + kOffSentenceIndex);
    const std::uint64_t sentence_data = internal::get_u64(d + kOffSentenceData);
    const bool ordered = key_table == kHeaderSize &&
                         key_blob == key_table + key_count_ * kKeyEntrySize &&
                         key_blob <= postings && postings <= sentence_index &&
                         sentence_index + (sentence_count_ + 1) * 8 == sentence_data &&
                         sentence_data <= n;
    if (!ordered) throw IndexError(id_, "section offsets out of range");
    keys_ = d + key_table;
    blob_ = d + key_blob;
    blob_size_ = postings - key_blob;
    postings_ = d + postings;
    postings_size_ = sentence_index - postings;
    sentence_index_ = d + sentence_index;
    sentence_data_ = d + sentence_data;
    sentence_data_size_ = n - sentence_data;
    for (std::uint64_t i = 0; i < key_count_; ++i) {
      const Entry e = entry(i);
      if (std::uint64_t{e.key_offset} + e.key_len > blob_size_ ||
          e.posting_offset + e.posting_bytes > postings_size_) {
        throw IndexError(id_, "key table entry out of range");
      }
    }
    if (offset(sentence_count_) != sentence_data_size_) {
      throw IndexError(id_, "sentence store size mismatch");
    }
  }

  std::uint32_t id() const { return id_; }
  std::uint64_t sentence_count() const { return sentence_count_; }

  struct Range {
    const std::uint8_t* begin = nullptr;
    const std::uint8_t* end = nullptr;
    std::uint32_t count = 0;
  };

  Range find(std::string_view key) const {
    std::uint64_t lo = 0;
    std::uint64_t hi = key_count_;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (key_at(mid) < key) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo == key_count_ || key_at(lo) != key) return {};
    const Entry e = entry(lo);
    return {postings_ + e.posting_offset,
            postings_ + e.posting_offset + e.posting_bytes, e.count};
  }

  ParsedSentence sentence(std::uint32_t ordinal) const {
    if (ordinal >= sentence_count_) {
      throw IndexError(id_, "sentence ordinal " + std::to_string(ordinal) +
                                " out of range");
    }
    const std::uint64_t begin = offset(ordinal);
    const std::uint64_t end = offset(ordinal + 1);
    if (begin > end || end > sentence_data_size_) {
      throw IndexError(id_, "corrupt sentence offset table");
    }
    ByteReader in(sentence_data_ + begin, sentence_data_ + end);
    auto s = decode_sentence(in);
    if (!s || !in.at_end()) throw IndexError(id_, "corrupt sentence record");
    return std::move(*s);
  }

  SentenceRef sentence_ref(std::uint32_t ordinal) const {
    if (ordinal >= sentence_count_) {
      throw IndexError(id_, "sentence ordinal out of range");
    }
    ByteReader in(sentence_data_ + offset(ordinal),
                  sentence_data_ + sentence_data_size_);
    SentenceRef ref;
    const bool ok = in.string(ref.doc_id);
    const auto index = in.varint();
    if (!ok || !index) throw IndexError(id_, "corrupt sentence record");
    ref.sent_index = *index;
    return ref;
  }

  void verify() const {
    const auto* d = file_.data();
    const std::string_view body(reinterpret_cast<const char*>(d) + kHeaderSize,
                                file_.size() - kHeaderSize);
    if (crc32_of(body) != internal::get_u32(d + kOffBodyCrc)) {
      throw IndexError(id_, "body checksum mismatch");
    }
  }

 private:
  struct Entry {
    std::uint32_t key_offset;
    std::uint32_t key_len;
    std::uint64_t posting_offset;
    std::uint32_t count;
    std::uint32_t posting_bytes;
  };

  Entry entry(std::uint64_t i) const {
    const std::uint8_t* p = keys_ + i * kKeyEntrySize;
    return {internal::get_u32(p), internal::get_u32(p + 4),
            internal::get_u64(p + 8), internal::get_u32(p + 16),
            internal::get_u32(p + 20)};
  }

  std::string_view key_at(std::uint64_t i) const {
    const Entry e = entry(i);
    return {reinterpret_cast<const char*>(blob_) + e.key_offset, e.key_len};
  }

  std::uint64_t offset(std::uint64_t ordinal) const {
    return internal::get_u64(sentence_index_ + ordinal * 8);
  }

  std::uint32_t id_;
  internal::MappedFile file_;
  std::uint64_t sentence_count_ = 0;
  std::uint64_t key_count_ = 0;
  const std::uint8_t* keys_ = nullptr;
  const std::uint8_t* blob_ = nullptr;
  std::uint64_t blob_size_ = 0;
  const std::uint8_t* postings_ = nullptr;
  std::uint64_t postings_size_ = 0;
  const std::uint8_t* sentence_index_ = nullptr;
  const std::uint8_t* sentence_data_ = nullptr;
  std::uint64_t sentence_data_size_ = 0;
};

bool PostingStream::next(Posting& out) {
  while (seg_ < segments_.size()) {
    Segment& s = segments_[seg_];
    if (s.remaining == 0) {
      ++seg_;
      fresh_segment_ = true;
      continue;
    }
    ByteReader in(s.cur, s.end);
    const auto delta = in.varint();
    const auto token = in.varint();
    if (!delta || !token) throw IndexError(s.chunk_id, "corrupt posting list");
    s.cur = in.position();
    --s.remaining;
    last_ordinal_ = fresh_segment_ ? static_cast<std::uint32_t>(*delta)
                                   : last_ordinal_ + static_cast<std::uint32_t>(*delta);
    fresh_segment_ = false;
    out = {s.chunk_id, last_ordinal_, static_cast<TokenId>(*token)};
    return true;
  }
  return false;
}

std::vector<Posting> PostingStream::collect() {
  std::vector<Posting> all;
  Posting p;
  while (next(p)) all.push_back(p);
  return all;
}

DepIndex DepIndex::open(const fs::path& dir) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::exists(manifest_path)) {
    throw IndexError("no index manifest at " + manifest_path.string());
  }
  DepIndex index;
  index.manifest_ = IndexManifest::from_json(read_file(manifest_path));
  for (std::size_t i = 0; i < index.manifest_.chunks.size(); ++i) {
    const ChunkInfo& info = index.manifest_.chunks[i];
    if (info.id != i) throw IndexError("manifest chunk ids are not sequential");
    auto reader = std::make_unique<ChunkReader>(dir / info.file, info.id,
                                                index.manifest_.max_depth);
    if (reader->sentence_count() != info.sentences) {
      throw IndexError(info.id, "sentence count does not match manifest");
    }
    index.chunks_.push_back(std::move(reader));
  }
  return index;
}

DepIndex::DepIndex(DepIndex&&) noexcept = default;
DepIndex& DepIndex::operator=(DepIndex&&) noexcept = default;
DepIndex::~DepIndex() = default;

PostingStream DepIndex::lookup(const ChainKey& key) const {
  PostingStream stream;
  for (std::uint32_t c = 0; c < chunks_.size(); ++c) {
    PostingStream part = lookup_in_chunk(c, key);
    stream.segments_.insert(stream.segments_.end(), part.segments_.begin(),
                            part.segments_.end());
  }
  return stream;
}

PostingStream DepIndex::lookup_in_chunk(std::uint32_t chunk_id,
                                        const ChainKey& key) const {
  if (key.steps.empty() || key.depth() > manifest_.max_depth) {
    throw UsageError("chain key depth " + std::to_string(key.depth()) +
                     " outside 1.." + std::to_string(manifest_.max_depth));
  }
  if (chunk_id >= chunks_.size()) throw UsageError("no such chunk");
  PostingStream stream;
  const auto range = chunks_[chunk_id]->find(key.encode());
  if (range.count > 0) {
    stream.segments_.push_back({chunk_id, range.begin, range.end, range.count});
  }
  return stream;
}

std::uint64_t DepIndex::posting_count(const ChainKey& key) const {
  if (key.steps.empty() || key.depth() > manifest_.max_depth) {
    throw UsageError("chain key deeper than index");
  }
  const std::string encoded = key.encode();
  std::uint64_t total = 0;
  for (const auto& chunk : chunks_) total += chunk->find(encoded).count;
  return total;
}

std::uint64_t DepIndex::chunk_sentence_count(std::uint32_t chunk_id) const {
  if (chunk_id >= chunks_.size()) throw UsageError("no such chunk");
  return chunks_[chunk_id]->sentence_count();
}

ParsedSentence DepIndex::sentence(std::uint32_t chunk_id,
                                  std::uint32_t ordinal) const {
  if (chunk_id >= chunks_.size()) throw UsageError("no such chunk");
  return chunks_[chunk_id]->sentence(ordinal);
}

SentenceRef DepIndex::sentence_ref(std::uint32_t chunk_id,
                                   std::uint32_t ordinal) const {
  if (chunk_id >= chunks_.size()) throw UsageError("no such chunk");
  return chunks_[chunk_id]->sentence_ref(ordinal);
}

void DepIndex::verify() const {
  for (const auto& chunk : chunks_) chunk->verify();
}

}  // namespace depforge
