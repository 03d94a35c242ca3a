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

#include "szzkit/mine.hpp"

#include "szzkit/errors.hpp"
#include "szzkit/util.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

namespace szzkit {

namespace {

bool is_word_char(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')
        || c == '_';
}

bool contains_whole_word(const std::string& haystack, const std::string& needle)
{
    std::string lowered = haystack;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::size_t pos = 0;
    while ((pos = lowered.find(needle, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !is_word_char(lowered[pos - 1]);
        std::size_t end = pos + needle.size();
        bool right_ok = end == lowered.size() || !is_word_char(lowered[end]);
        if (left_ok && right_ok)
            return true;
        pos += 1;
    }
    return false;
}

std::string to_lower_hex(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

} // namespace

std::vector<MinedEntry> mine_fixes(Repo& repo, MineMode mode,
                                   std::optional<std::int64_t> since,
                                   std::vector<std::string>& diagnostics)
{
    static const std::regex fixes_line(R"(^\s*Fixes:\s*([0-9a-fA-F]{7,40})\b)",
                                       std::regex::ECMAScript);

    std::vector<MinedEntry> mined;
    for (const CommitId& id : repo.list_commits()) {
        CommitMeta meta = repo.meta(id);
        if (since && meta.committer_time < *since)
            continue;

        if (mode == MineMode::Keyword) {
            if (contains_whole_word(meta.message, "fix")
                || contains_whole_word(meta.message, "bug")
                || contains_whole_word(meta.message, "introduce"))
                mined.push_back({ id, {} });
            continue;
        }

        std::vector<CommitId> inducing;
        bool unresolvable = false;
        for (const std::string& line : split_lines(meta.message)) {
            std::smatch match;
            if (!std::regex_search(line, match, fixes_line))
                continue;
            std::string referenced = to_lower_hex(match[1].str());
            try {
                CommitMeta resolved = repo.resolve_commit(referenced);
                if (std::find(inducing.begin(), inducing.end(), resolved.id)
                    == inducing.end())
                    inducing.push_back(resolved.id);
            } catch (const UnknownRef&) {
                diagnostics.push_back("skipped " + id.short_hex() + ": unresolvable id "
                                      + referenced);
                unresolvable = true;
            } catch (const AmbiguousPrefix&) {
                diagnostics.push_back("skipped " + id.short_hex() + ": ambiguous id "
                                      + referenced);
                unresolvable = true;
            }
        }
        if (!unresolvable && !inducing.empty())
            mined.push_back({ id, std::move(inducing) });
    }
    return mined;
}

} // namespace szzkit
