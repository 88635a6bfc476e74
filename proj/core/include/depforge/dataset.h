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
// Training-record serialization and corpus statistics.
//
// Each example becomes one JSONL record {"schema":1,"source","target","meta"}
// where source is the premises joined in a per-record random order. The
// order depends only on (seed, record index), so output is reproducible.

#ifndef DEPFORGE_DATASET_H_
#define DEPFORGE_DATASET_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "depforge/example.h"

namespace depforge {

inline constexpr int kRecordSchemaVersion = 1;

struct EmitOptions {
  std::uint64_t seed = 0;
  std::string separator = " ";
  // Share of source sentences routed to the dev split; 0 disables it.
  double dev_fraction = 0.0;
};

struct TrainingRecord {
  std::string source;
  std::string target;
  std::string example_id;
  Operation op = Operation::kSubstitution;
  std::string pattern_id;
  SentenceRef sentence;
  bool paraphrase = false;
  std::optional<std::string> paraphrase_of;
  std::vector<std::size_t> premise_order;

  std::string to_json() const;
};

// Uniform permutation of 0..count-1 keyed by (seed, index).
std::vector<std::size_t> premise_order(std::uint64_t seed, std::size_t index,
                                       std::size_t count);

TrainingRecord make_record(const DeductionExample& example, std::size_t index,
                           const EmitOptions& options);

// Paraphrased copies follow their original, so every variant of one source
// sentence lands in the same split.
bool is_dev(const DeductionExample& example, const EmitOptions& options);

struct EmitSummary {
  std::size_t train_records = 0;
  std::size_t dev_records = 0;
};

// Writes records in input order. dev may be null when dev_fraction is 0.
EmitSummary emit_records(std::span<const DeductionExample> examples,
                         const EmitOptions& options, std::ostream& train,
                         std::ostream* dev);

struct PatternCounts {
  std::size_t matches = 0;
  std::size_t kept = 0;
  std::size_t dropped = 0;
};

struct OpCounts {
  std::size_t examples = 0;  // template outputs, before augmentation
  std::size_t records = 0;   // after augmentation
};

struct DatasetStats {
  std::size_t records = 0;
  std::size_t originals = 0;
  std::size_t paraphrased = 0;
  std::size_t augmentation_failures = 0;
  std::size_t train_records = 0;
  std::size_t dev_records = 0;
  std::map<std::string, PatternCounts> patterns;
  std::map<std::string, OpCounts> ops;
  std::map<std::string, std::size_t> dropped_reasons;

  double paraphrase_ratio() const;
  double augmentation_multiplier() const;
  std::string to_json() const;
};

// Reasons are grouped by the text before the first ':'.
DatasetStats compute_stats(std::span<const DeductionExample> examples,
                           std::span<const SkipEntry> skips,
                           const EmitSummary* summary = nullptr);

}  // namespace depforge

#endif  // DEPFORGE_DATASET_H_
