// Copyright 2026 The szzkit Authors.
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

#ifndef SZZKIT_FENCED_HPP
#define SZZKIT_FENCED_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace szzkit {

// Ordered KEY: value pairs extracted from a model reply. Keys repeat
// (FILE_1, FILE_2, ...) so this is a list, not a map.
struct FencedFields {
    std::vector<std::pair<std::string, std::string>> entries;

    std::optional<std::string> first(const std::string& key) const;
    // Values of KEY_1, KEY_2, ... in numeric order (missing index stops the scan).
    std::vector<std::string> numbered(const std::string& prefix) const;
};

// Extracts the first ``` fenced block from text; nullopt when there is none
// or the fence never closes.
std::optional<std::string> extract_fenced_block(const std::string& text);

// Parses "KEY: value" lines from the first fenced block. Keys are
// [A-Z][A-Z0-9_]*; other lines are ignored. nullopt when no block exists or
// the block has no recognizable fields.
std::optional<FencedFields> parse_fenced_fields(const std::string& text);

} // namespace szzkit

#endif
