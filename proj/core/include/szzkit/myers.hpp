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

#ifndef SZZKIT_MYERS_HPP
#define SZZKIT_MYERS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace szzkit {

// One matched (unchanged) line: 1-based positions in the old and new file.
struct MatchPair {
    std::size_t old_line = 0;
    std::size_t new_line = 0;

    friend bool operator==(const MatchPair& a, const MatchPair& b)
    {
        return a.old_line == b.old_line && a.new_line == b.new_line;
    }
};

// Minimal line-level diff (Myers O(ND), linear-space divide and conquer).
// Returns the matched pairs of a longest common subsequence, strictly
// increasing in both coordinates.
std::vector<MatchPair> diff_lines(const std::vector<std::string>& old_lines,
                                  const std::vector<std::string>& new_lines);

} // namespace szzkit

#endif
