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

#include "szzkit/context.hpp"

#include <algorithm>

#include "szzkit/errors.hpp"
#include "szzkit/util.hpp"

namespace szzkit {

namespace {

struct Interval {
    std::size_t first = 0, last = 0; // 1-based inclusive; 0/0 = empty

    bool empty() const { return first == 0; }

    void merge(std::size_t f, std::size_t l)
    {
        if (f == 0)
            return;
        if (empty()) {
            first = f;
            last = l;
        } else {
            first = std::min(first, f);
            last = std::max(last, l);
        }
    }

    bool overlaps(const Interval& other) const
    {
        return !empty() && !other.empty() && first <= other.last && other.first <= last;
    }
};

struct RegionDraft {
    RegionKind kind = RegionKind::Window;
    Interval old_range;
    Interval new_range;
};

// Extends the draft by every function span overlapping one of `lines`.
bool add_overlapping_spans(Interval& range, const std::vector<FunctionSpan>& spans,
                           const std::vector<std::size_t>& lines)
{
    bool any = false;
    for (const auto& span : spans) {
        for (std::size_t line : lines) {
            if (line >= span.start_line && line <= span.end_line) {
                range.merge(span.start_line, span.end_line);
                any = true;
                break;
            }
        }
    }
    return any;
}

std::vector<std::string> slice(const std::vector<std::string>& lines, const Interval& range)
{
    if (range.empty())
        return {};
    std::vector<std::string> out;
    for (std::size_t i = range.first; i <= range.last && i <= lines.size(); ++i)
        out.push_back(lines[i - 1]);
    return out;
}

} // namespace

std::string numbered_slice(const std::vector<std::string>& lines, std::size_t first,
                           std::size_t last)
{
    std::string out;
    for (std::size_t i = std::max<std::size_t>(first, 1); i <= last && i <= lines.size(); ++i) {
        out += std::to_string(i);
        out += ": ";
        out += lines[i - 1];
        out += '\n';
    }
    return out;
}

std::vector<std::size_t> resolve_statement(const std::vector<std::string>& lines,
                                           std::string_view statement)
{
    std::vector<std::size_t> matches;
    std::string_view wanted = strip(statement);
    if (wanted.empty())
        return matches;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (strip(lines[i]) == wanted)
            matches.push_back(i + 1);
    return matches;
}

ExpandedContext expand_context(Repo& repo, const CommitId& fix, const std::string& path,
                               Language language, std::size_t window_lines)
{
    ExpandedContext context;
    context.fix = fix;
    context.path = path;

    // Locate the changed-file entry (by new path, falling back to old path
    // for deletions).
    std::string old_path, new_path;
    bool found = false;
    for (const auto& change : repo.changed_files(fix)) {
        if (change.new_path == path || (change.new_path.empty() && change.old_path == path)) {
            old_path = change.old_path;
            new_path = change.new_path;
            found = true;
            break;
        }
    }
    if (!found)
        throw FileAbsent("file not changed by " + fix.hex() + ": " + path);

    CommitMeta fix_meta = repo.meta(fix);
    static const std::vector<std::string> no_lines;
    const std::vector<std::string>* old_lines = &no_lines;
    const std::vector<std::string>* new_lines = &no_lines;
    std::optional<FileVersion> old_version, new_version;
    if (!old_path.empty() && !fix_meta.parents.empty()) {
        old_version = repo.file_at(fix_meta.parents[0], old_path);
        if (old_version)
            old_lines = &old_version->lines;
    }
    if (!new_path.empty()) {
        new_version = repo.file_at(fix, new_path);
        if (new_version)
            new_lines = &new_version->lines;
    }

    FilePatch patch = diff_files(old_path, new_path, *old_lines, *new_lines, window_lines);
    std::vector<FunctionSpan> old_spans = extract_function_spans(*old_lines, language);
    std::vector<FunctionSpan> new_spans = extract_function_spans(*new_lines, language);

    LineMap map = LineMap::build(*old_lines, *new_lines);

    // One draft region per hunk: the enclosing functions when any changed
    // line falls inside one (in either version), otherwise the hunk's own
    // window. The hunk range is always included so changed lines outside
    // the matched functions stay covered.
    std::vector<RegionDraft> drafts;
    for (const auto& hunk : patch.hunks) {
        std::vector<std::size_t> deleted, added;
        for (const auto& line : hunk.lines) {
            if (line.kind == LineKind::Deleted)
                deleted.push_back(line.old_no);
            else if (line.kind == LineKind::Added)
                added.push_back(line.new_no);
        }

        RegionDraft draft;
        bool in_function = false;
        in_function |= add_overlapping_spans(draft.old_range, old_spans, deleted);
        in_function |= add_overlapping_spans(draft.new_range, new_spans, added);

        // Pair the other version's body of the same function via the map.
        if (!draft.old_range.empty()) {
            std::vector<std::size_t> mapped;
            for (std::size_t i = draft.old_range.first; i <= draft.old_range.last; ++i)
                if (auto to = map.to_new(i))
                    mapped.push_back(*to);
            add_overlapping_spans(draft.new_range, new_spans, mapped);
        }
        if (!draft.new_range.empty()) {
            std::vector<std::size_t> mapped;
            for (std::size_t i = draft.new_range.first; i <= draft.new_range.last; ++i)
                if (auto to = map.to_old(i))
                    mapped.push_back(*to);
            add_overlapping_spans(draft.old_range, old_spans, mapped);
        }

        draft.kind = in_function ? RegionKind::Function : RegionKind::Window;
        if (hunk.old_len > 0)
            draft.old_range.merge(hunk.old_start, hunk.old_start + hunk.old_len - 1);
        if (hunk.new_len > 0)
            draft.new_range.merge(hunk.new_start, hunk.new_start + hunk.new_len - 1);
        drafts.push_back(draft);
    }

    // Coalesce drafts that overlap in either version; Function wins.
    std::vector<RegionDraft> merged;
    for (const auto& draft : drafts) {
        bool absorbed = false;
        for (auto& existing : merged) {
            if (existing.old_range.overlaps(draft.old_range)
                || existing.new_range.overlaps(draft.new_range)) {
                existing.old_range.merge(draft.old_range.first, draft.old_range.last);
                existing.new_range.merge(draft.new_range.first, draft.new_range.last);
                if (draft.kind == RegionKind::Function)
                    existing.kind = RegionKind::Function;
                absorbed = true;
                break;
            }
        }
        if (!absorbed)
            merged.push_back(draft);
    }

    for (const auto& draft : merged) {
        ContextRegion region;
        region.kind = draft.kind;
        region.old_first = draft.old_range.first;
        region.old_last = draft.old_range.last;
        region.new_first = draft.new_range.first;
        region.new_last = draft.new_range.last;
        region.old_text = numbered_slice(*old_lines, region.old_first, region.old_last);
        region.new_text = numbered_slice(*new_lines, region.new_first, region.new_last);
        std::vector<std::string> old_slice = slice(*old_lines, draft.old_range);
        std::vector<std::string> new_slice = slice(*new_lines, draft.new_range);
        std::size_t full = old_slice.size() + new_slice.size() + 1;
        region.rendered_diff = render(
            { diff_files(old_path.empty() ? new_path : old_path,
                         new_path.empty() ? old_path : new_path, old_slice, new_slice, full) });
        context.regions.push_back(std::move(region));
    }
    return context;
}

std::pair<RefinedContext, RefinedContext> refine_context(
    Repo& repo, const CommitId& rev_buggy, const CommitId& rev_fixed,
    const std::string& path, const std::vector<std::size_t>& buggy_lines,
    std::size_t initial_margin, const std::string& path_fixed)
{
    if (buggy_lines.empty())
        throw Error("refine_context: no buggy lines given");

    auto buggy_version = repo.file_at(rev_buggy, path);
    if (!buggy_version)
        throw FileAbsent("no file " + path + " at " + rev_buggy.hex());
    const std::vector<std::string>& buggy = buggy_version->lines;
    std::size_t len = buggy.size();

    std::size_t l1 = *std::min_element(buggy_lines.begin(), buggy_lines.end());
    std::size_t ln = *std::max_element(buggy_lines.begin(), buggy_lines.end());
    if (l1 == 0 || ln > len)
        throw LineOutOfRange("buggy lines outside " + path + " at " + rev_buggy.hex());

    RefinedContext buggy_slice;
    buggy_slice.rev = rev_buggy;
    buggy_slice.path = path;

    RefinedContext fixed_slice;
    fixed_slice.rev = rev_fixed;
    const std::string& fixed_path = path_fixed.empty() ? path : path_fixed;
    fixed_slice.path = fixed_path;

    auto fixed_version = repo.file_at(rev_fixed, fixed_path);
    auto finish = [&](std::size_t first, std::size_t last) {
        buggy_slice.first_line = first;
        buggy_slice.last_line = last;
        buggy_slice.text = numbered_slice(buggy, first, last);
    };

    if (!fixed_version) {
        // The fix-side file does not exist (file created later): empty
        // fixed context, initial margin on the buggy side.
        std::size_t n = initial_margin;
        finish(l1 > n ? l1 - n : 1, std::min(len, ln + n));
        return { buggy_slice, fixed_slice };
    }

    const std::vector<std::string>& fixed = fixed_version->lines;
    LineMap map = LineMap::build(buggy, fixed);

    for (std::size_t n = initial_margin;; ++n) {
        std::size_t l_min = l1 > n ? l1 - n : 1;
        std::size_t l_max = std::min(len, ln + n);
        auto mapped_min = map.to_new(l_min);
        auto mapped_max = map.to_new(l_max);
        if (mapped_min && mapped_max) {
            finish(l_min, l_max);
            fixed_slice.first_line = *mapped_min;
            fixed_slice.last_line = *mapped_max;
            fixed_slice.text = numbered_slice(fixed, *mapped_min, *mapped_max);
            return { buggy_slice, fixed_slice };
        }
        if (l_min == 1 && l_max == len) {
            // No admissible boundary at all: both slices are the whole file.
            finish(1, len);
            fixed_slice.first_line = fixed.empty() ? 0 : 1;
            fixed_slice.last_line = fixed.size();
            fixed_slice.text = numbered_slice(fixed, 1, fixed.size());
            return { buggy_slice, fixed_slice };
        }
    }
}

} // namespace szzkit
