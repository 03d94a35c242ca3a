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

#include "szzkit/noise.hpp"

#include <string>
#include <unordered_set>

#include "szzkit/util.hpp"

namespace szzkit {

NoiseClass classify_noise(std::string_view line, Language language)
{
    (void)language; // C and Java share the comment syntax this heuristic covers
    std::string_view s = strip(line);
    if (s.empty())
        return NoiseClass::Blank;
    if (s.substr(0, 2) == "//")
        return NoiseClass::Comment;
    if (s.substr(0, 2) == "/*" && s.size() >= 4 && s.substr(s.size() - 2) == "*/")
        return NoiseClass::Comment;
    if (s.front() == '*')
        return NoiseClass::Comment; // block-comment continuation (incl. "*/")
    return NoiseClass::Code;
}

std::set<std::size_t> cosmetic_deleted_lines(const FilePatch& patch)
{
    std::set<std::size_t> cosmetic;
    if (patch.is_binary)
        return cosmetic;
    for (const auto& hunk : patch.hunks) {
        std::unordered_set<std::string> added;
        for (const auto& line : hunk.lines)
            if (line.kind == LineKind::Added)
                added.insert(std::string(strip(line.text)));
        for (const auto& line : hunk.lines)
            if (line.kind == LineKind::Deleted
                && added.count(std::string(strip(line.text))) > 0)
                cosmetic.insert(line.old_no);
    }
    return cosmetic;
}

} // namespace szzkit
