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

#include "szzkit/classic.hpp"

#include <map>

#include "szzkit/errors.hpp"

namespace szzkit {

namespace {

// Follows MA-SZZ's trace-through rule: step over merges (and, defensively,
// commits that left the traced file untouched) via the first parent, with
// the line clamped to the parent file's length. Stops at roots, and keeps
// the meta-change itself when no continuation is possible.
LineOrigin trace_through_meta(Repo& repo, LineOrigin origin)
{
    for (int step = 0; step < 1024; ++step) {
        CommitMeta commit = repo.meta(origin.commit);
        if (commit.parents.empty())
            return origin;

        std::string parent_path = origin.path;
        if (!commit.is_merge()) {
            bool touched = false;
            for (const auto& change : repo.changed_files(origin.commit)) {
                if (change.new_path == origin.path) {
                    touched = true;
                    break;
                }
            }
            if (touched)
                return origin; // real textual change: not a meta-change
        } else {
            for (const auto& change : repo.changed_files(origin.commit)) {
                if (change.new_path == origin.path && !change.old_path.empty()) {
                    parent_path = change.old_path;
                    break;
                }
            }
        }

        try {
            auto parent_file = repo.file_at(commit.parents[0], parent_path);
            if (!parent_file || parent_file->lines.empty())
                return origin; // nothing to continue on; keep the meta-change
            std::size_t clamped = std::min(origin.line, parent_file->lines.size());
            origin = repo.trace_line(commit.parents[0], parent_path, clamped);
        } catch (const BinaryFile&) {
            return origin;
        }
    }
    return origin; // unreachable with an acyclic history; belt-and-braces
}

enum class Filter { None, Noise, NoiseAndMeta };

CandidateSet run_szz(Repo& repo, const CommitId& fix, Filter filter, Language language)
{
    CandidateSet result;
    result.fix = fix;

    CommitMeta fix_meta = repo.meta(fix);
    if (fix_meta.parents.empty())
        return result; // a root commit deletes nothing
    const CommitId& parent = fix_meta.parents[0];

    std::map<CommitId, std::size_t> traced;
    for (const auto& patch : repo.diff_patches(fix)) {
        if (patch.is_binary || patch.old_path.empty())
            continue;
        std::set<std::size_t> cosmetic;
        if (filter != Filter::None)
            cosmetic = cosmetic_deleted_lines(patch);
        for (const auto& hunk : patch.hunks) {
            for (const auto& line : hunk.lines) {
                if (line.kind != LineKind::Deleted)
                    continue;
                if (filter != Filter::None) {
                    if (classify_noise(line.text, language) != NoiseClass::Code)
                        continue;
                    if (cosmetic.count(line.old_no))
                        continue;
                }
                LineOrigin origin = repo.trace_line(parent, patch.old_path, line.old_no);
                if (filter == Filter::NoiseAndMeta)
                    origin = trace_through_meta(repo, origin);
                ++traced[origin.commit];
            }
        }
    }

    for (const auto& [id, count] : traced) {
        Candidate candidate;
        candidate.id = id;
        candidate.traced_lines = count;
        candidate.committer_time = repo.meta(id).committer_time;
        result.candidates.push_back(std::move(candidate));
    }
    return result;
}

} // namespace

CandidateSet b_szz(Repo& repo, const CommitId& fix)
{
    return run_szz(repo, fix, Filter::None, Language::C);
}

CandidateSet ag_szz(Repo& repo, const CommitId& fix, Language language)
{
    return run_szz(repo, fix, Filter::Noise, language);
}

CandidateSet ma_szz(Repo& repo, const CommitId& fix, Language language)
{
    return run_szz(repo, fix, Filter::NoiseAndMeta, language);
}

std::optional<CommitId> select_single(const CandidateSet& set, SelectStrategy strategy)
{
    if (set.candidates.empty())
        return std::nullopt;
    auto latest_wins = [](const Candidate& a, const Candidate& b) {
        if (a.committer_time != b.committer_time)
            return a.committer_time > b.committer_time;
        return a.id < b.id;
    };
    const Candidate* best = &set.candidates.front();
    for (const auto& candidate : set.candidates) {
        bool better = false;
        if (strategy == SelectStrategy::Latest) {
            better = latest_wins(candidate, *best);
        } else {
            if (candidate.traced_lines != best->traced_lines)
                better = candidate.traced_lines > best->traced_lines;
            else
                better = latest_wins(candidate, *best);
        }
        if (better)
            best = &candidate;
    }
    return best->id;
}

} // namespace szzkit
