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

#ifndef SZZKIT_TYPES_HPP
#define SZZKIT_TYPES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "szzkit/errors.hpp"

namespace szzkit {

// Full 40-hex-digit commit id.  Construction validates shape so the rest of
// the code never has to re-check.
class CommitId {
public:
    CommitId() = default;

    explicit CommitId(std::string hex)
        : m_hex(std::move(hex))
    {
        if (m_hex.size() != 40)
            throw Error("commit id must be 40 hex digits: " + m_hex);
        for (char c : m_hex) {
            bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
            if (!ok)
                throw Error("commit id must be lowercase hex: " + m_hex);
        }
    }

    const std::string& hex() const { return m_hex; }
    std::string short_hex(std::size_t n = 10) const { return m_hex.substr(0, n); }
    bool empty() const { return m_hex.empty(); }

    friend bool operator==(const CommitId& a, const CommitId& b) { return a.m_hex == b.m_hex; }
    friend bool operator!=(const CommitId& a, const CommitId& b) { return a.m_hex != b.m_hex; }
    friend bool operator<(const CommitId& a, const CommitId& b) { return a.m_hex < b.m_hex; }

private:
    std::string m_hex;
};

struct CommitMeta {
    CommitId id;
    std::vector<CommitId> parents;
    std::string author_name;
    std::string author_email;
    std::int64_t author_time = 0;    // seconds since epoch
    std::string committer_name;
    std::string committer_email;
    std::int64_t committer_time = 0; // seconds since epoch
    std::string message;             // full message, subject + body

    bool is_merge() const { return parents.size() > 1; }
    bool is_root() const { return parents.empty(); }
};

// One file's content at one commit, split into lines.  Lines carry no
// terminator; the original had LF or CRLF endings normalized away.
struct FileVersion {
    CommitId commit;
    std::string path;
    std::vector<std::string> lines;
};

// Where a traced line came from: the commit whose diff introduced it and
// the path/line it occupied there.
struct LineOrigin {
    CommitId commit;
    std::string path;
    std::size_t line = 0; // 1-based
};

// A changed file inside one commit's diff against a parent.
enum class ChangeKind { Added, Deleted, Modified, Renamed };

struct ChangedFile {
    ChangeKind kind = ChangeKind::Modified;
    std::string old_path; // empty for Added
    std::string new_path; // empty for Deleted
};

} // namespace szzkit

template <>
struct std::hash<szzkit::CommitId> {
    std::size_t operator()(const szzkit::CommitId& id) const noexcept
    {
        return std::hash<std::string>{}(id.hex());
    }
};

#endif
