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

#ifndef SZZKIT_CONTEXT_HPP
#define SZZKIT_CONTEXT_HPP

#include <string>
#include <utility>
#include <vector>

#include "szzkit/repo.hpp"
#include "szzkit/spans.hpp"

namespace szzkit {

enum class RegionKind { Function, Window };

// One region of an expanded context: the full enclosing function(s) of a
// change in both versions, or a small window around an out-of-function
// change. Line ranges are 1-based inclusive; 0/0 marks an absent side.
struct ContextRegion {
    RegionKind kind = RegionKind::Window;
    std::size_t old_first = 0, old_last = 0;
    std::size_t new_first = 0, new_last = 0;
    std::string old_text;      // "lineno: content" lines; empty if absent
    std::string new_text;
    std::string rendered_diff; // unified diff of the two slices
};

struct ExpandedContext {
    CommitId fix;
    std::string path;
    std::vector<ContextRegion> regions;
};

// The slice [first_line, last_line] of one file version, rendered with
// "lineno: content" prefixes. A default-constructed value (first_line == 0)
// is the empty context of an absent file.
struct RefinedContext {
    CommitId rev;
    std::string path;
    std::size_t first_line = 0;
    std::size_t last_line = 0;
    std::string text;

    bool empty() const { return first_line == 0; }
};

// Builds the expanded context of one file changed by fix: function regions
// (full old/new bodies) for changes inside functions, window regions with
// `window_lines` unchanged lines of margin for changes outside them.
ExpandedContext expand_context(Repo& repo, const CommitId& fix, const std::string& path,
                               Language language, std::size_t window_lines = 3);

// Refines a context around buggy_lines (1-based lines in rev_buggy's file):
// starting from margin N = initial_margin, the slice [max(1, l_1−N),
// min(len, l_n+N)] is widened until both boundary lines map into
// rev_fixed's version; if no boundary maps even at full clamping, both
// slices are the whole file. When the file is absent at rev_fixed the fixed
// slice is empty and the buggy slice uses the initial margin unchanged.
// path_fixed overrides the path at rev_fixed (renames); empty means "same".
std::pair<RefinedContext, RefinedContext> refine_context(
    Repo& repo, const CommitId& rev_buggy, const CommitId& rev_fixed,
    const std::string& path, const std::vector<std::size_t>& buggy_lines,
    std::size_t initial_margin = 3, const std::string& path_fixed = {});

// Resolves a statement reported as text to 1-based line numbers by exact
// whitespace-stripped match; all matches are returned, none for blank text.
std::vector<std::size_t> resolve_statement(const std::vector<std::string>& lines,
                                           std::string_view statement);

// "lineno: content" rendering of the slice [first, last] (1-based,
// inclusive, clamped to the file).
std::string numbered_slice(const std::vector<std::string>& lines, std::size_t first,
                           std::size_t last);

} // namespace szzkit

#endif
