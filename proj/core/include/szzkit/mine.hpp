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

#ifndef SZZKIT_MINE_HPP
#define SZZKIT_MINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "szzkit/repo.hpp"
#include "szzkit/types.hpp"

namespace szzkit {

enum class MineMode { FixesTag, Keyword };

// One mined case: a probable bug-fixing commit, with its self-declared
// inducing commits in fixes-tag mode (empty in keyword mode, where entries
// are unconfirmed candidates).
struct MinedEntry {
    CommitId fix;
    std::vector<CommitId> inducing;
};

// Scans the full first-parent history. fixes_tag mode matches message lines
// of the form "Fixes: <7-40 hex digits>" and resolves the id (entries whose
// id cannot be resolved are skipped with a diagnostic). keyword mode keeps
// commits whose message contains "fix", "bug", or "introduce" as a
// case-insensitive whole word. `since` keeps only fixes with
// committer_time >= since. Results follow history order (newest first).
std::vector<MinedEntry> mine_fixes(Repo& repo, MineMode mode,
                                   std::optional<std::int64_t> since,
                                   std::vector<std::string>& diagnostics);

} // namespace szzkit

#endif
