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

#include "szzkit/line_map.hpp"

#include <algorithm>

namespace szzkit {

LineMap::LineMap(std::vector<MatchPair> pairs, std::size_t old_len, std::size_t new_len)
    : m_pairs(std::move(pairs))
    , m_old_len(old_len)
    , m_new_len(new_len)
{
    std::sort(m_pairs.begin(), m_pairs.end(), [](const MatchPair& a, const MatchPair& b) {
        return a.old_line < b.old_line;
    });
}

LineMap LineMap::build(const std::vector<std::string>& old_lines,
                       const std::vector<std::string>& new_lines)
{
    return LineMap(diff_lines(old_lines, new_lines), old_lines.size(), new_lines.size());
}

std::optional<std::size_t> LineMap::to_new(std::size_t old_line) const
{
    auto it = std::lower_bound(m_pairs.begin(), m_pairs.end(), old_line,
                               [](const MatchPair& p, std::size_t v) { return p.old_line < v; });
    if (it != m_pairs.end() && it->old_line == old_line)
        return it->new_line;
    return std::nullopt;
}

std::optional<std::size_t> LineMap::to_old(std::size_t new_line) const
{
    // new_line order equals old_line order (strict order preservation).
    auto it = std::lower_bound(m_pairs.begin(), m_pairs.end(), new_line,
                               [](const MatchPair& p, std::size_t v) { return p.new_line < v; });
    if (it != m_pairs.end() && it->new_line == new_line)
        return it->old_line;
    return std::nullopt;
}

} // namespace szzkit
