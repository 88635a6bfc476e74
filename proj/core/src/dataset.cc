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
#include "depforge/dataset.h"

#include <numeric>

#include "depforge/rng.h"
#include "json.hpp"

namespace depforge {

using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kShuffleStream = 0x53485546464c45ULL;
constexpr std::uint64_t kSplitStream = 0x53504c4954ULL;

std::string base_id(const DeductionExample& example) {
  return example.paraphrase_of.value_or(example.id());
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::vector<std::size_t> premise_order(std::uint64_t seed, std::size_t index,
                                       std::size_t count) {
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  CounterRng rng(derive_seed(seed, {kShuffleStream, index}));
  for (std::size_t i = count; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  return order;
}

TrainingRecord make_record(const DeductionExample& example, std::size_t index,
                           const EmitOptions& options) {
  TrainingRecord r;
  r.premise_order = premise_order(options.seed, index, example.premises.size());
  for (const std::size_t i : r.premise_order) {
    if (!r.source.empty()) r.source += options.separator;
    r.source += example.premises[i];
  }
  r.target = example.conclusion;
  r.example_id = example.id();
  r.op = example.op;
  r.pattern_id = example.provenance.pattern_id;
  r.sentence = example.provenance.sentence;
  r.paraphrase = example.paraphrase_of.has_value();
  r.paraphrase_of = example.paraphrase_of;
  return r;
}

std::string TrainingRecord::to_json() const {
  ordered_json meta;
  meta["id"] = example_id;
  meta["op"] = operation_name(op);
  meta["pattern_id"] = pattern_id;
  meta["doc_id"] = sentence.doc_id;
  meta["sent_index"] = sentence.sent_index;
  meta["paraphrase"] = paraphrase;
  if (paraphrase_of) meta["paraphrase_of"] = *paraphrase_of;
  meta["premise_order"] = premise_order;
  ordered_json j;
  j["schema"] = kRecordSchemaVersion;
  j["source"] = source;
  j["target"] = target;
  j["meta"] = std::move(meta);
  return j.dump();
}

bool is_dev(const DeductionExample& example, const EmitOptions& options) {
  if (options.dev_fraction <= 0.0) return false;
  const std::uint64_t h = derive_seed(options.seed, {kSplitStream, fnv1a64(base_id(example))});
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return u < options.dev_fraction;
}

EmitSummary emit_records(std::span<const DeductionExample> examples,
                         const EmitOptions& options, std::ostream& train,
                         std::ostream* dev) {
  EmitSummary summary;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const std::string line = make_record(examples[i], i, options).to_json();
    if (dev != nullptr && is_dev(examples[i], options)) {
      *dev << line << '\n';
      ++summary.dev_records;
    } else {
      train << line << '\n';
      ++summary.train_records;
    }
  }
  return summary;
}

double DatasetStats::paraphrase_ratio() const { return ratio(paraphrased, records); }

double DatasetStats::augmentation_multiplier() const { return ratio(records, originals); }

DatasetStats compute_stats(std::span<const DeductionExample> examples,
                           std::span<const SkipEntry> skips,
                           const EmitSummary* summary) {
  DatasetStats s;
  for (const Operation op : {Operation::kSubstitution, Operation::kContraposition}) {
    s.ops[std::string(operation_name(op))];
  }
  for (const DeductionExample& e : examples) {
    ++s.records;
    OpCounts& op = s.ops[std::string(operation_name(e.op))];
    ++op.records;
    if (e.paraphrase_of) {
      ++s.paraphrased;
      continue;
    }
    ++s.originals;
    ++op.examples;
    PatternCounts& p = s.patterns[e.provenance.pattern_id];
    ++p.matches;
    ++p.kept;
    if (e.note && e.note->starts_with("augmentation failed")) ++s.augmentation_failures;
  }
  for (const SkipEntry& skip : skips) {
    PatternCounts& p = s.patterns[skip.provenance.pattern_id];
    ++p.matches;
    ++p.dropped;
    const std::size_t colon = skip.reason.find(':');
    ++s.dropped_reasons[skip.reason.substr(0, colon)];
  }
  if (summary != nullptr) {
    s.train_records = summary->train_records;
    s.dev_records = summary->dev_records;
  } else {
    s.train_records = s.records;
  }
  return s;
}

std::string DatasetStats::to_json() const {
  ordered_json j;
  j["schema"] = kRecordSchemaVersion;
  j["records"] = records;
  j["train_records"] = train_records;
  j["dev_records"] = dev_records;
  j["originals"] = originals;
  j["paraphrased_copies"] = paraphrased;
  j["paraphrase_ratio"] = paraphrase_ratio();
  j["augmentation_multiplier"] = augmentation_multiplier();
  j["augmentation_failures"] = augmentation_failures;
  ordered_json ops_json = ordered_json::object();
  for (const auto& [name, c] : ops) {
    ops_json[name] = {{"examples", c.examples}, {"records", c.records}};
  }
  j["ops"] = std::move(ops_json);
  ordered_json patterns_json = ordered_json::object();
  for (const auto& [id, c] : patterns) {
    patterns_json[id] = {{"matches", c.matches}, {"kept", c.kept}, {"dropped", c.dropped}};
  }
  j["patterns"] = std::move(patterns_json);
  ordered_json reasons = ordered_json::object();
  for (const auto& [reason, count] : dropped_reasons) reasons[reason] = count;
  j["dropped_reasons"] = std::move(reasons);
  return j.dump(2);
}

}  // namespace depforge
