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

#ifndef SZZKIT_CLASSIC_HPP
#define SZZKIT_CLASSIC_HPP

#include <optional>
#include <vector>

#include "szzkit/noise.hpp"
#include "szzkit/repo.hpp"
#include "szzkit/types.hpp"

namespace szzkit {

struct Candidate {
    CommitId id;
    std::size_t traced_lines = 0; // deleted lines of the fix attributed here
    std::int64_t committer_time = 0;
};

struct CandidateSet {
    CommitId fix;
    std::vector<Candidate> candidates; // sorted by id; never contains fix
};

// B-SZZ: trace every deleted line of every non-binary file of the fix's
// diff (against its first parent) back to its origin commit.
CandidateSet b_szz(Repo& repo, const CommitId& fix);

// AG-SZZ: as b_szz, but deleted lines that are blank, comments, or cosmetic
// (whitespace-only changes) are not traced. Result ⊆ b_szz.
CandidateSet ag_szz(Repo& repo, const CommitId& fix, Language language = Language::C);

// MA-SZZ: as ag_szz, but when a traced origin is a meta-change (a merge, or
// a commit whose diff against its first parent leaves the traced file
// untouched), tracing continues through the first parent until a non-meta
// origin or a root commit is reached.
CandidateSet ma_szz(Repo& repo, const CommitId& fix, Language language = Language::C);

enum class SelectStrategy {
    Latest, // R-SZZ: most recent committer_time; ties → smallest id
    Largest // L-SZZ: most traced lines; ties → latest, then smallest id
};

std::optional<CommitId> select_single(const CandidateSet& set, SelectStrategy strategy);

} // namespace szzkit

#endif
