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

#ifndef SZZKIT_LINE_MAP_HPP
#define SZZKIT_LINE_MAP_HPP

#include <optional>
#include <string>
#include <vector>

#include "szzkit/myers.hpp"

namespace szzkit {

// Old↔new correspondence of the unchanged lines of a minimal line diff.
// Injective in both coordinates and strictly order-preserving.
class LineMap {
public:
    LineMap() = default;
    LineMap(std::vector<MatchPair> pairs, std::size_t old_len, std::size_t new_len);

    static LineMap build(const std::vector<std::string>& old_lines,
                         const std::vector<std::string>& new_lines);

    std::optional<std::size_t> to_new(std::size_t old_line) const;
    std::optional<std::size_t> to_old(std::size_t new_line) const;

    const std::vector<MatchPair>& pairs() const { return m_pairs; }
    std::size_t old_len() const { return m_old_len; }
    std::size_t new_len() const { return m_new_len; }

private:
    std::vector<MatchPair> m_pairs; // sorted by old_line (hence by new_line)
    std::size_t m_old_len = 0;
    std::size_t m_new_len = 0;
};

} // namespace szzkit

#endif
