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

#include "szzkit/fenced.hpp"

#include "szzkit/util.hpp"

#include <cctype>

namespace szzkit {

std::optional<std::string> FencedFields::first(const std::string& key) const
{
    for (const auto& [k, v] : entries)
        if (k == key)
            return v;
    return std::nullopt;
}

std::vector<std::string> FencedFields::numbered(const std::string& prefix) const
{
    std::vector<std::string> values;
    for (int index = 1;; ++index) {
        auto value = first(prefix + "_" + std::to_string(index));
        if (!value)
            break;
        values.push_back(*value);
    }
    return values;
}

std::optional<std::string> extract_fenced_block(const std::string& text)
{
    std::vector<std::string> lines = split_lines(text);
    std::size_t open = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (strip(lines[i]).substr(0, 3) == "```") {
            open = i;
            break;
        }
    }
    if (open == lines.size())
        return std::nullopt;
    std::string block;
    for (std::size_t i = open + 1; i < lines.size(); ++i) {
        if (strip(lines[i]) == "```")
            return block;
        block += lines[i];
        block.push_back('\n');
    }
    return std::nullopt; // fence never closed
}

namespace {

bool is_field_key(const std::string& key)
{
    if (key.empty() || !(key[0] >= 'A' && key[0] <= 'Z'))
        return false;
    for (char c : key)
        if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'))
            return false;
    return true;
}

} // namespace

std::optional<FencedFields> parse_fenced_fields(const std::string& text)
{
    auto block = extract_fenced_block(text);
    if (!block)
        return std::nullopt;
    FencedFields fields;
    for (const std::string& line : split_lines(*block)) {
        auto colon = line.find(':');
        if (colon == std::string::npos)
            continue;
        std::string key = std::string(strip(line.substr(0, colon)));
        if (!is_field_key(key))
            continue;
        std::string value = std::string(strip(line.substr(colon + 1)));
        fields.entries.emplace_back(std::move(key), std::move(value));
    }
    if (fields.entries.empty())
        return std::nullopt;
    return fields;
}

} // namespace szzkit
