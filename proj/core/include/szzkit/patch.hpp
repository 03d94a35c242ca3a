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

#ifndef SZZKIT_PATCH_HPP
#define SZZKIT_PATCH_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace szzkit {

enum class LineKind { Context, Added, Deleted };

// One body line of a hunk. old_no/new_no are 1-based; 0 means "no position
// on that side" (added lines have no old_no, deleted lines no new_no).
struct PatchLine {
    LineKind kind = LineKind::Context;
    std::string text; // without the leading marker character
    std::size_t old_no = 0;
    std::size_t new_no = 0;

    friend bool operator==(const PatchLine&, const PatchLine&) = default;
};

struct Hunk {
    std::size_t old_start = 0; // 0 only for zero-length old side
    std::size_t old_len = 0;
    std::size_t new_start = 0;
    std::size_t new_len = 0;
    std::string heading; // text after the closing @@, possibly empty
    std::vector<PatchLine> lines;

    friend bool operator==(const Hunk&, const Hunk&) = default;
};

// One file's diff. An empty old_path means the file was created, an empty
// new_path that it was deleted.
struct FilePatch {
    std::string old_path;
    std::string new_path;
    bool is_binary = false;
    std::vector<Hunk> hunks;

    friend bool operator==(const FilePatch&, const FilePatch&) = default;
};

// Parses unified-diff text (git style, possibly multi-file) into the model.
// Throws MalformedDiff carrying the byte offset of the offending line.
std::vector<FilePatch> parse_unified(const std::string& diff_text);

// Renders the model back to unified-diff text. parse_unified(render(m)) == m.
std::string render(const std::vector<FilePatch>& patches);

// Total added + deleted lines across all files; binary files contribute 0.
std::size_t count_changed_lines(const std::vector<FilePatch>& patches);

// Builds a FilePatch from two file snapshots using the module's own minimal
// diff, with `context` unchanged lines around each change (hunks whose
// context would touch are coalesced). Empty old_path/new_path follow the
// creation/deletion convention above.
FilePatch diff_files(const std::string& old_path, const std::string& new_path,
                     const std::vector<std::string>& old_lines,
                     const std::vector<std::string>& new_lines,
                     std::size_t context = 3);

// JSON serialization of a FilePatch (single-line object) for report files.
std::string patch_to_json(const FilePatch& patch);

} // namespace szzkit

#endif
