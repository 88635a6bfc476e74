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
#include "depforge/example.h"

#include <stdexcept>

#include "depforge/errors.h"
#include "json.hpp"

namespace depforge {

using nlohmann::ordered_json;

std::string DeductionExample::id() const {
  std::string out = provenance.sentence.doc_id + "#" +
                    std::to_string(provenance.sentence.sent_index) + "/" +
                    provenance.pattern_id + "/";
  bool first = true;
  for (const auto& [capture, token] : provenance.bindings) {
    if (!first) out += ",";
    out += std::to_string(capture) + "=" + std::to_string(token);
    first = false;
  }
  if (variant > 0) out += "/p" + std::to_string(variant);
  return out;
}

namespace {

ordered_json provenance_to_json(const Provenance& p) {
  ordered_json bindings = ordered_json::object();
  for (const auto& [capture, token] : p.bindings) {
    bindings[std::to_string(capture)] = token;
  }
  return {{"doc_id", p.sentence.doc_id},
          {"sent_index", p.sentence.sent_index},
          {"pattern_id", p.pattern_id},
          {"bindings", bindings},
          {"chunk_id", p.chunk_id},
          {"ordinal", p.ordinal}};
}

Provenance provenance_from_json(const nlohmann::json& p) {
  Provenance out;
  out.sentence.doc_id = p.at("doc_id").get<std::string>();
  out.sentence.sent_index = p.at("sent_index").get<std::uint64_t>();
  out.pattern_id = p.at("pattern_id").get<std::string>();
  for (const auto& [capture, token] : p.at("bindings").items()) {
    out.bindings[std::stoi(capture)] = token.get<TokenId>();
  }
  out.chunk_id = p.at("chunk_id").get<std::uint32_t>();
  out.ordinal = p.at("ordinal").get<std::uint32_t>();
  return out;
}

Operation op_from_json(const nlohmann::json& j) {
  const std::string name = j.at("op").get<std::string>();
  const auto op = parse_operation(name);
  if (!op) throw DataError("unknown op " + name);
  return *op;
}

template <typename T, typename Parse>
std::vector<T> read_jsonl(std::istream& in, std::string_view source_name, Parse parse) {
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                      ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                      ": " + e.what());
    } catch (const DataError& e) {
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) +
                      ": " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string example_to_json(const DeductionExample& e) {
  ordered_json j;
  j["id"] = e.id();
  j["op"] = operation_name(e.op);
  j["premises"] = e.premises;
  j["conclusion"] = e.conclusion;
  j["provenance"] = provenance_to_json(e.provenance);
  j["variant"] = e.variant;
  if (e.paraphrase_of) j["paraphrase_of"] = *e.paraphrase_of;
  if (e.note) j["note"] = *e.note;
  return j.dump();
}

DeductionExample example_from_json(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  DeductionExample e;
  e.op = op_from_json(j);
  e.premises = j.at("premises").get<std::vector<std::string>>();
  e.conclusion = j.at("conclusion").get<std::string>();
  e.provenance = provenance_from_json(j.at("provenance"));
  e.variant = j.value("variant", 0u);
  if (j.contains("paraphrase_of")) e.paraphrase_of = j["paraphrase_of"].get<std::string>();
  if (j.contains("note")) e.note = j["note"].get<std::string>();
  return e;
}

void write_examples(std::ostream& out, std::span<const DeductionExample> examples) {
  for (const DeductionExample& e : examples) out << example_to_json(e) << '\n';
}

std::vector<DeductionExample> read_examples(std::istream& in,
                                            std::string_view source_name) {
  return read_jsonl<DeductionExample>(in, source_name, example_from_json);
}

std::string match_to_json(const MatchRecord& m) {
  ordered_json j;
  j["op"] = operation_name(m.op);
  j["provenance"] = provenance_to_json(m.provenance);
  j["text"] = m.text;
  return j.dump();
}

MatchRecord match_from_json(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  MatchRecord m;
  m.op = op_from_json(j);
  m.provenance = provenance_from_json(j.at("provenance"));
  m.text = j.value("text", std::string());
  return m;
}

void write_matches(std::ostream& out, std::span<const MatchRecord> matches) {
  for (const MatchRecord& m : matches) out << match_to_json(m) << '\n';
}

std::vector<MatchRecord> read_matches(std::istream& in, std::string_view source_name) {
  return read_jsonl<MatchRecord>(in, source_name, match_from_json);
}

std::string skip_to_json(const SkipEntry& s) {
  ordered_json j;
  j["op"] = operation_name(s.op);
  j["provenance"] = provenance_to_json(s.provenance);
  j["stage"] = s.stage;
  j["reason"] = s.reason;
  return j.dump();
}

SkipEntry skip_from_json(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  SkipEntry s;
  s.op = op_from_json(j);
  s.provenance = provenance_from_json(j.at("provenance"));
  s.stage = j.at("stage").get<std::string>();
  s.reason = j.at("reason").get<std::string>();
  return s;
}

void write_skips(std::ostream& out, std::span<const SkipEntry> skips) {
  for (const SkipEntry& s : skips) out << skip_to_json(s) << '\n';
}

std::vector<SkipEntry> read_skips(std::istream& in, std::string_view source_name) {
  return read_jsonl<SkipEntry>(in, source_name, skip_from_json);
}

}  // namespace depforge
