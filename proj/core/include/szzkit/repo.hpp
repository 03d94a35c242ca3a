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

#ifndef SZZKIT_REPO_HPP
#define SZZKIT_REPO_HPP

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "szzkit/line_map.hpp"
#include "szzkit/patch.hpp"
#include "szzkit/subprocess.hpp"
#include "szzkit/types.hpp"

namespace szzkit {

// Commit-metadata cache shareable between repository handles on the same
// repository; safe for concurrent readers with occasional writers.
class MetaCache {
public:
    std::optional<CommitMeta> get(const CommitId& id) const;
    void put(const CommitMeta& meta);

private:
    mutable std::shared_mutex m_mutex;
    std::unordered_map<CommitId, CommitMeta> m_metas;
};

// Read-only handle on an on-disk git repository. All object reads go
// through one persistent `git cat-file --batch` child, so lookups after the
// first cost no process spawn. A handle is single-user; concurrent workers
// each open their own handle (optionally sharing a MetaCache).
class Repo {
public:
    explicit Repo(std::string path, std::shared_ptr<MetaCache> cache = nullptr);

    Repo(const Repo&) = delete;
    Repo& operator=(const Repo&) = delete;

    const std::string& path() const { return m_path; }

    // Resolves a full id, a hex prefix (>=4 chars), or a symbolic ref to
    // commit metadata. Annotated tags are peeled.
    CommitMeta resolve_commit(const std::string& ref);

    // Metadata of a known-resolved commit id.
    CommitMeta meta(const CommitId& id);

    // File snapshot at a revision, or nullopt if the path does not exist
    // there. Throws BinaryFile for non-text content.
    std::optional<FileVersion> file_at(const CommitId& rev, const std::string& path);

    // Files touched by rev relative to its first parent (the empty tree for
    // root commits), with rename detection at 50% content similarity.
    std::vector<ChangedFile> changed_files(const CommitId& rev);

    // Last commit (walking first parents, following renames) that added or
    // modified the given line.
    LineOrigin trace_line(const CommitId& rev, const std::string& path, std::size_t line_no);

    // The full diff of rev against its first parent, as parsed patches or
    // rendered unified text.
    std::vector<FilePatch> diff_patches(const CommitId& rev, std::size_t context = 3);
    std::string diff_text(const CommitId& rev, std::size_t context = 3);

    // All commits reachable from HEAD, newest first.
    std::vector<CommitId> list_commits();

    // Line map between the first-parent version and rev's version of the
    // changed file pair (old_path@parent vs new_path@rev); cached.
    std::shared_ptr<const LineMap> line_map(const CommitId& rev, const std::string& old_path,
                                            const std::string& new_path);

private:
    struct BlobInfo {
        std::string sha;
        std::string mode;
    };
    struct Object {
        std::string type;
        std::string data;
    };

    std::optional<Object> read_object(const std::string& name);
    const std::map<std::string, BlobInfo>& tree_of(const CommitId& rev);
    void load_tree(const std::string& tree_sha, const std::string& prefix,
                   std::map<std::string, BlobInfo>& out);
    std::shared_ptr<const std::vector<std::string>> blob_lines(const std::string& sha);
    bool blob_is_binary(const std::string& sha);
    double blob_similarity(const std::string& old_sha, const std::string& new_sha);
    CommitMeta parse_commit(const CommitId& id, const std::string& data);

    std::string m_path;
    std::shared_ptr<MetaCache> m_meta_cache;
    std::unique_ptr<PipeProcess> m_batch;

    std::unordered_map<CommitId, std::map<std::string, BlobInfo>> m_trees;
    std::unordered_map<CommitId, std::vector<ChangedFile>> m_changes;
    std::unordered_map<std::string, std::shared_ptr<std::vector<std::string>>> m_blobs;
    std::unordered_map<std::string, std::shared_ptr<const LineMap>> m_line_maps;
};

} // namespace szzkit

#endif
