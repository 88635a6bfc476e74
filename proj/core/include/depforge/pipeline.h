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
// Stage orchestration over a shared work directory:
//
//   index/                 chunked chain index (plus ingest_skips.jsonl)
//   matches.jsonl          search hits for every configured pattern
//   examples.jsonl         template output; expand_skips.jsonl drops
//   augmented.jsonl        originals plus paraphrased copies
//   train.jsonl            training records; dev.jsonl when split
//   stats.json             dataset statistics
//
// Each stage reads only files written by earlier stages, so running the
// stages one at a time gives the same bytes as run_pipeline().

#ifndef DEPFORGE_PIPELINE_H_
#define DEPFORGE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depforge/augment.h"
#include "depforge/chain_index.h"
#include "depforge/dataset.h"
#include "depforge/example.h"
#include "depforge/pattern.h"
#include "depforge/templates.h"

namespace depforge {

enum class OperationSelection { kSubstitution, kContraposition, kBoth };

std::optional<OperationSelection> parse_operation_selection(std::string_view text);
std::string_view operation_selection_name(OperationSelection selection);

// Configuration file format: one "key = value" per line, '#' starts a
// comment line, list values are comma separated, values may be wrapped in
// double quotes to keep surrounding spaces. Relative paths resolve against
// the directory holding the file. Keys:
//
//   corpus, work_dir, index_dir, patterns, stoplist, operation, provider,
//   paraphrases, top_p, seed, workers, chunk_size, max_depth, separator,
//   dev_fraction, retries, provider_timeout_ms
struct PipelineConfig {
  std::vector<std::filesystem::path> corpus;
  std::filesystem::path work_dir = "work";
  std::optional<std::filesystem::path> index_dir;
  // Entries are "path" (operation taken from a file stem starting with
  // "sub" or "contra") or "substitution:path" / "contraposition:path".
  // Empty means the built-in patterns.
  std::vector<std::string> patterns;
  std::optional<std::filesystem::path> stoplist;
  OperationSelection operation = OperationSelection::kBoth;
  // mock, identity, fixture:<path>, http://host:port, or none.
  std::string provider = "mock";
  int paraphrases = kDefaultParaphraseCount;
  double top_p = kDefaultTopP;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::size_t chunk_size = kDefaultChunkSize;
  unsigned max_depth = kDefaultMaxDepth;
  std::string separator = " ";
  double dev_fraction = 0.0;
  int retries = 3;
  int provider_timeout_ms = 30000;

  // Applies one key/value; relative paths resolve against base_dir.
  // Throws UsageError for unknown keys or malformed values.
  void set(std::string_view key, std::string_view value,
           const std::filesystem::path& base_dir = {});
  static PipelineConfig load(const std::filesystem::path& path);
  void merge_file(const std::filesystem::path& path);

  std::filesystem::path index_path() const;
  std::filesystem::path work_file(std::string_view name) const;
  std::uint64_t require_seed(std::string_view stage) const;
};

struct OpPattern {
  Operation op;
  DepPattern pattern;
};

std::vector<OpPattern> resolve_patterns(const PipelineConfig& config);
ModifierStoplist resolve_stoplist(const PipelineConfig& config);

using StageLog = std::function<void(const std::string&)>;

struct IndexStageOptions {
  bool force = false;  // remove an existing index first
};

IndexManifest stage_index(const PipelineConfig& config, const StageLog& log,
                          const IndexStageOptions& options = {});

// Hits for every pattern, ordered by (chunk, ordinal, pattern order,
// bindings).
std::vector<MatchRecord> collect_matches(const DepIndex& index,
                                         std::span<const OpPattern> patterns,
                                         unsigned workers, const StageLog& log);

struct ExpandResult {
  std::vector<DeductionExample> examples;
  std::vector<SkipEntry> skips;
};

// Filters, expands and de-duplicates matches (identical premises and
// conclusion keep the first occurrence).
ExpandResult expand_matches(const DepIndex& index, std::span<const MatchRecord> matches,
                            const ModifierStoplist& stoplist);

std::vector<MatchRecord> stage_search(const PipelineConfig& config, const StageLog& log);
ExpandResult stage_expand(const PipelineConfig& config, const StageLog& log);
std::vector<DeductionExample> stage_augment(const PipelineConfig& config,
                                            const StageLog& log);
DatasetStats stage_emit(const PipelineConfig& config, const StageLog& log);
DatasetStats run_pipeline(const PipelineConfig& config, const StageLog& log,
                          const IndexStageOptions& index_options = {});

// Writes through a temporary file renamed into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace depforge

#endif  // DEPFORGE_PIPELINE_H_
