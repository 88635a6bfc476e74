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
#ifndef DEPFORGE_TEXT_UTIL_H_
#define DEPFORGE_TEXT_UTIL_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace depforge {

// ASCII-only case mapping; non-ASCII bytes pass through untouched.
std::string ascii_lower(std::string_view s);
std::string capitalize_first(std::string_view s);
std::string lowercase_first(std::string_view s);

bool is_ascii_alpha(char c);
bool has_alpha(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);
std::vector<std::string> split_words(std::string_view s);

std::uint32_t crc32_of(std::string_view bytes, std::uint32_t seed = 0);

// Character-level Levenshtein distance (bytes).
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace depforge

#endif  // DEPFORGE_TEXT_UTIL_H_
