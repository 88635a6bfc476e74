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

#ifndef DEPFORGE_ERRORS_H_
#define DEPFORGE_ERRORS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace depforge {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes, so new error kinds should derive from one of these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data: CoNLL-U syntax, corrupt index files, bad JSONL.
class DataError : public Error {
 public:
  using Error::Error;
};

class IngestError : public DataError {
 public:
  IngestError(std::string file, std::size_t line, const std::string& what)
      : DataError(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class PatternSyntaxError : public DataError {
 public:
  PatternSyntaxError(std::size_t offset, const std::string& what)
      : DataError("pattern syntax error at byte " + std::to_string(offset) +
                  ": " + what),
        offset_(offset),
        reason_(what) {}

  std::size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

class IndexError : public DataError {
 public:
  explicit IndexError(const std::string& what) : DataError(what) {}
  IndexError(std::uint32_t chunk_id, const std::string& what)
      : DataError("chunk " + std::to_string(chunk_id) + ": " + what),
        chunk_id_(chunk_id) {}

  std::optional<std::uint32_t> chunk_id() const { return chunk_id_; }

 private:
  std::optional<std::uint32_t> chunk_id_;
};

// Failure talking to a paraphrase backend. Transient failures are retried.
class ProviderError : public Error {
 public:
  ProviderError(const std::string& what, bool transient)
      : Error(what), transient_(transient) {}

  bool transient() const { return transient_; }

 private:
  bool transient_;
};

// Invalid arguments or configuration supplied by the caller.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace depforge

#endif  // DEPFORGE_ERRORS_H_
