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

#include "szzkit/repo.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>
#include <unordered_set>

#include "szzkit/errors.hpp"
#include "szzkit/util.hpp"

namespace szzkit {

namespace {

bool is_hex(std::string_view s)
{
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
            return false;
    return !s.empty();
}

std::string to_hex(const unsigned char* bytes, std::size_t n)
{
    static const char digits[] = "0123456789abcdef";
    std::string hex(n * 2, '0');
    for (std::size_t i = 0; i < n; ++i) {
        hex[2 * i] = digits[bytes[i] >> 4];
        hex[2 * i + 1] = digits[bytes[i] & 0xf];
    }
    return hex;
}

// "Name <email> 1700000000 +0000" → (name, email, epoch seconds).
void parse_ident(std::string_view value, std::string& name, std::string& email,
                 std::int64_t& time)
{
    auto lt = value.rfind('<');
    auto gt = value.rfind('>');
    if (lt == std::string_view::npos || gt == std::string_view::npos || gt < lt)
        return;
    name = std::string(strip(value.substr(0, lt)));
    email = std::string(value.substr(lt + 1, gt - lt - 1));
    std::string_view rest = strip(value.substr(gt + 1));
    auto space = rest.find(' ');
    std::string_view ts = space == std::string_view::npos ? rest : rest.substr(0, space);
    time = 0;
    for (char c : ts) {
        if (c < '0' || c > '9')
            break;
        time = time * 10 + (c - '0');
    }
}

} // namespace

std::optional<CommitMeta> MetaCache::get(const CommitId& id) const
{
    std::shared_lock lock(m_mutex);
    auto it = m_metas.find(id);
    if (it == m_metas.end())
        return std::nullopt;
    return it->second;
}

void MetaCache::put(const CommitMeta& meta)
{
    std::unique_lock lock(m_mutex);
    m_metas.emplace(meta.id, meta);
}

Repo::Repo(std::string path, std::shared_ptr<MetaCache> cache)
    : m_path(std::move(path))
    , m_meta_cache(std::move(cache))
{
    RunResult probe = run_command({ "git", "rev-parse", "--git-dir" }, m_path);
    if (probe.exit_code != 0)
        throw NotARepository("not a git repository: " + m_path
                             + (probe.err.empty() ? "" : " (" + std::string(strip(probe.err)) + ")"));
    m_batch = std::make_unique<PipeProcess>(
        std::vector<std::string>{ "git", "cat-file", "--batch" }, m_path);
}

std::optional<Repo::Object> Repo::read_object(const std::string& name)
{
    m_batch->write(name + "\n");
    std::string header = m_batch->read_line();
    // "<sha> <type> <size>" on success; "<name> missing" (or similar
    // one-word diagnoses) otherwise.
    auto first_space = header.find(' ');
    if (first_space == std::string::npos)
        throw GitCommandError("unexpected cat-file reply: " + header);
    auto second_space = header.find(' ', first_space + 1);
    if (second_space == std::string::npos)
        return std::nullopt; // "<name> missing" / "ambiguous"
    Object object;
    object.type = header.substr(first_space + 1, second_space - first_space - 1);
    std::size_t size = 0;
    for (char c : header.substr(second_space + 1)) {
        if (c < '0' || c > '9')
            throw GitCommandError("unexpected cat-file size in: " + header);
        size = size * 10 + static_cast<std::size_t>(c - '0');
    }
    object.data = m_batch->read_exact(size);
    m_batch->read_exact(1); // trailing newline
    return object;
}

CommitMeta Repo::parse_commit(const CommitId& id, const std::string& data)
{
    CommitMeta meta;
    meta.id = id;
    std::size_t pos = 0;
    while (pos < data.size()) {
        std::size_t nl = data.find('\n', pos);
        if (nl == std::string::npos)
            nl = data.size();
        std::string_view line(data.data() + pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) {
            meta.message = data.substr(pos);
            break;
        }
        if (line.front() == ' ')
            continue; // continuation of a multi-line header (gpgsig)
        auto space = line.find(' ');
        if (space == std::string_view::npos)
            continue;
        std::string_view key = line.substr(0, space);
        std::string_view value = line.substr(space + 1);
        if (key == "parent") {
            meta.parents.emplace_back(std::string(value));
        } else if (key == "author") {
            parse_ident(value, meta.author_name, meta.author_email, meta.author_time);
        } else if (key == "committer") {
            parse_ident(value, meta.committer_name, meta.committer_email, meta.committer_time);
        }
    }
    return meta;
}

CommitMeta Repo::meta(const CommitId& id)
{
    if (m_meta_cache) {
        if (auto cached = m_meta_cache->get(id))
            return *cached;
    }
    auto object = read_object(id.hex());
    if (!object)
        throw UnknownRef("no such object: " + id.hex());
    if (object->type != "commit")
        throw UnknownRef("object is a " + object->type + ", not a commit: " + id.hex());
    CommitMeta meta = parse_commit(id, object->data);
    if (m_meta_cache)
        m_meta_cache->put(meta);
    return meta;
}

CommitMeta Repo::resolve_commit(const std::string& ref)
{
    if (ref.empty())
        throw UnknownRef("empty ref");

    if (ref.size() == 40 && is_hex(ref)) {
        auto object = read_object(ref);
        if (!object)
            throw UnknownRef("no such commit: " + ref);
        if (object->type == "commit")
            return meta(CommitId(ref));
        if (object->type == "tag") {
            // Peel the annotated tag: first header line is "object <sha>".
            if (object->data.rfind("object ", 0) == 0)
                return resolve_commit(object->data.substr(7, 40));
        }
        throw UnknownRef("object is a " + object->type + ", not a commit: " + ref);
    }

    if (ref.size() >= 4 && ref.size() < 40 && is_hex(ref)) {
        RunResult result = run_command(
            { "git", "rev-parse", "--disambiguate=" + ref }, m_path);
        if (result.exit_code != 0)
            throw UnknownRef("no object matches prefix: " + ref);
        std::vector<std::string> commits;
        for (const auto& line : split_lines(result.out)) {
            if (line.size() != 40 || !is_hex(line))
                continue;
            auto object = read_object(line);
            if (object && object->type == "commit")
                commits.push_back(line);
        }
        std::sort(commits.begin(), commits.end());
        commits.erase(std::unique(commits.begin(), commits.end()), commits.end());
        if (commits.empty())
            throw UnknownRef("no commit matches prefix: " + ref);
        if (commits.size() > 1)
            throw AmbiguousPrefix("prefix matches " + std::to_string(commits.size())
                                  + " commits: " + ref);
        return meta(CommitId(commits.front()));
    }

    RunResult result = run_command(
        { "git", "rev-parse", "--verify", "--quiet", ref + "^{commit}" }, m_path);
    if (result.exit_code != 0)
        throw UnknownRef("cannot resolve ref: " + ref);
    std::vector<std::string> lines = split_lines(result.out);
    if (lines.empty() || lines[0].size() != 40)
        throw UnknownRef("cannot resolve ref: " + ref);
    return meta(CommitId(lines[0]));
}

void Repo::load_tree(const std::string& tree_sha, const std::string& prefix,
                     std::map<std::string, BlobInfo>& out)
{
    auto object = read_object(tree_sha);
    if (!object || object->type != "tree")
        throw GitCommandError("missing tree object: " + tree_sha);
    const std::string& data = object->data;
    std::size_t pos = 0;
    while (pos < data.size()) {
        std::size_t space = data.find(' ', pos);
        std::size_t nul = data.find('\0', space);
        if (space == std::string::npos || nul == std::string::npos || nul + 20 > data.size())
            throw GitCommandError("malformed tree object: " + tree_sha);
        std::string mode = data.substr(pos, space - pos);
        std::string name = data.substr(space + 1, nul - space - 1);
        std::string sha = to_hex(reinterpret_cast<const unsigned char*>(data.data() + nul + 1), 20);
        pos = nul + 21;
        if (mode == "40000") {
            load_tree(sha, prefix + name + "/", out);
        } else if (mode == "160000") {
            continue; // submodule gitlink: out of scope
        } else {
            out.emplace(prefix + name, BlobInfo{ sha, mode });
        }
    }
}

const std::map<std::string, Repo::BlobInfo>& Repo::tree_of(const CommitId& rev)
{
    auto it = m_trees.find(rev);
    if (it != m_trees.end())
        return it->second;
    auto object = read_object(rev.hex());
    if (!object)
        throw UnknownRef("no such commit: " + rev.hex());
    if (object->type != "commit")
        throw UnknownRef("object is a " + object->type + ", not a commit: " + rev.hex());
    if (object->data.rfind("tree ", 0) != 0)
        throw GitCommandError("commit without tree header: " + rev.hex());
    std::string tree_sha = object->data.substr(5, 40);
    std::map<std::string, BlobInfo> files;
    load_tree(tree_sha, "", files);
    return m_trees.emplace(rev, std::move(files)).first->second;
}

std::shared_ptr<const std::vector<std::string>> Repo::blob_lines(const std::string& sha)
{
    auto it = m_blobs.find(sha);
    if (it != m_blobs.end()) {
        if (!it->second)
            throw BinaryFile("binary blob: " + sha);
        return it->second;
    }
    auto object = read_object(sha);
    if (!object || object->type != "blob")
        throw GitCommandError("missing blob object: " + sha);
    if (object->data.find('\0') != std::string::npos) {
        m_blobs.emplace(sha, nullptr); // remember binaries too
        throw BinaryFile("binary blob: " + sha);
    }
    auto lines = std::make_shared<std::vector<std::string>>(split_lines(object->data));
    if (m_blobs.size() > 4096)
        m_blobs.clear(); // crude cap; handles are per-run
    m_blobs.emplace(sha, lines);
    return lines;
}

bool Repo::blob_is_binary(const std::string& sha)
{
    try {
        blob_lines(sha);
        return false;
    } catch (const BinaryFile&) {
        return true;
    }
}

std::optional<FileVersion> Repo::file_at(const CommitId& rev, const std::string& path)
{
    const auto& tree = tree_of(rev);
    auto it = tree.find(path);
    if (it == tree.end())
        return std::nullopt;
    FileVersion version;
    version.commit = rev;
    version.path = path;
    version.lines = *blob_lines(it->second.sha);
    return version;
}

double Repo::blob_similarity(const std::string& old_sha, const std::string& new_sha)
{
    if (old_sha == new_sha)
        return 1.0;
    if (blob_is_binary(old_sha) || blob_is_binary(new_sha))
        return 0.0;
    auto old_lines = blob_lines(old_sha);
    auto new_lines = blob_lines(new_sha);
    if (old_lines->empty() && new_lines->empty())
        return 1.0;
    // Common line multiset, order-insensitive: cheap and adequate for the
    // 50% rename threshold.
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& line : *old_lines)
        ++counts[line];
    std::size_t common = 0;
    for (const auto& line : *new_lines) {
        auto it = counts.find(line);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++common;
        }
    }
    return 2.0 * static_cast<double>(common)
        / static_cast<double>(old_lines->size() + new_lines->size());
}

std::vector<ChangedFile> Repo::changed_files(const CommitId& rev)
{
    auto cached = m_changes.find(rev);
    if (cached != m_changes.end())
        return cached->second;

    CommitMeta commit = meta(rev);
    const auto& new_tree = tree_of(rev);
    static const std::map<std::string, BlobInfo> empty_tree;
    const auto& old_tree = commit.parents.empty() ? empty_tree : tree_of(commit.parents[0]);

    std::vector<std::string> added, deleted;
    std::vector<ChangedFile> changes;
    for (const auto& [path, info] : new_tree) {
        auto it = old_tree.find(path);
        if (it == old_tree.end())
            added.push_back(path);
        else if (it->second.sha != info.sha)
            changes.push_back({ ChangeKind::Modified, path, path });
        // mode-only changes carry no line content: not a change here
    }
    for (const auto& [path, info] : old_tree)
        if (new_tree.find(path) == new_tree.end())
            deleted.push_back(path);

    // Rename pairing: similarity ≥ 0.5, greedily by (similarity desc,
    // old path asc, new path asc).
    struct RenameCandidate {
        double similarity;
        std::string old_path;
        std::string new_path;
    };
    std::vector<RenameCandidate> candidates;
    for (const auto& old_path : deleted) {
        for (const auto& new_path : added) {
            double sim = blob_similarity(old_tree.at(old_path).sha, new_tree.at(new_path).sha);
            if (sim >= 0.5)
                candidates.push_back({ sim, old_path, new_path });
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const RenameCandidate& a, const RenameCandidate& b) {
                  if (a.similarity != b.similarity)
                      return a.similarity > b.similarity;
                  if (a.old_path != b.old_path)
                      return a.old_path < b.old_path;
                  return a.new_path < b.new_path;
              });
    std::unordered_set<std::string> used_old, used_new;
    for (const auto& candidate : candidates) {
        if (used_old.count(candidate.old_path) || used_new.count(candidate.new_path))
            continue;
        used_old.insert(candidate.old_path);
        used_new.insert(candidate.new_path);
        changes.push_back({ ChangeKind::Renamed, candidate.old_path, candidate.new_path });
    }
    for (const auto& path : added)
        if (!used_new.count(path))
            changes.push_back({ ChangeKind::Added, "", path });
    for (const auto& path : deleted)
        if (!used_old.count(path))
            changes.push_back({ ChangeKind::Deleted, path, "" });

    std::sort(changes.begin(), changes.end(), [](const ChangedFile& a, const ChangedFile& b) {
        const std::string& ka = a.new_path.empty() ? a.old_path : a.new_path;
        const std::string& kb = b.new_path.empty() ? b.old_path : b.new_path;
        return ka < kb;
    });
    m_changes.emplace(rev, changes);
    return changes;
}

std::shared_ptr<const LineMap> Repo::line_map(const CommitId& rev, const std::string& old_path,
                                              const std::string& new_path)
{
    std::string key = rev.hex() + ":" + old_path + ":" + new_path;
    auto it = m_line_maps.find(key);
    if (it != m_line_maps.end())
        return it->second;

    CommitMeta commit = meta(rev);
    if (commit.parents.empty())
        throw GitCommandError("line_map of a root commit: " + rev.hex());
    auto old_version = file_at(commit.parents[0], old_path);
    auto new_version = file_at(rev, new_path);
    if (!old_version || !new_version)
        throw FileAbsent("line_map endpoints missing for " + new_path + " at " + rev.hex());
    auto map = std::make_shared<LineMap>(LineMap::build(old_version->lines, new_version->lines));
    m_line_maps.emplace(std::move(key), map);
    return map;
}

LineOrigin Repo::trace_line(const CommitId& rev, const std::string& path, std::size_t line_no)
{
    auto version = file_at(rev, path);
    if (!version)
        throw FileAbsent("no file " + path + " at " + rev.hex());
    if (line_no == 0 || line_no > version->lines.size())
        throw LineOutOfRange("line " + std::to_string(line_no) + " outside " + path + " at "
                             + rev.hex() + " (" + std::to_string(version->lines.size())
                             + " lines)");

    CommitId current_rev = rev;
    std::string current_path = path;
    std::size_t current_line = line_no;
    for (;;) {
        CommitMeta commit = meta(current_rev);
        if (commit.parents.empty())
            return { current_rev, current_path, current_line }; // root added everything

        std::vector<ChangedFile> changes = changed_files(current_rev);
        const ChangedFile* entry = nullptr;
        for (const auto& change : changes) {
            if (!change.new_path.empty() && change.new_path == current_path) {
                entry = &change;
                break;
            }
        }
        if (entry == nullptr) {
            // Untouched by this commit: identical content at the parent.
            current_rev = commit.parents[0];
            continue;
        }
        if (entry->kind == ChangeKind::Added)
            return { current_rev, current_path, current_line };

        auto map = line_map(current_rev, entry->old_path, current_path);
        auto mapped = map->to_old(current_line);
        if (!mapped)
            return { current_rev, current_path, current_line }; // added/modified here
        current_rev = commit.parents[0];
        current_path = entry->old_path;
        current_line = *mapped;
    }
}

std::vector<FilePatch> Repo::diff_patches(const CommitId& rev, std::size_t context)
{
    std::vector<FilePatch> patches;
    static const std::vector<std::string> no_lines;
    for (const auto& change : changed_files(rev)) {
        const std::string& old_path = change.old_path;
        const std::string& new_path = change.new_path;
        try {
            const std::vector<std::string>* old_lines = &no_lines;
            const std::vector<std::string>* new_lines = &no_lines;
            std::optional<FileVersion> old_version, new_version;
            if (!old_path.empty()) {
                old_version = file_at(meta(rev).parents.at(0), old_path);
                if (old_version)
                    old_lines = &old_version->lines;
            }
            if (!new_path.empty()) {
                new_version = file_at(rev, new_path);
                if (new_version)
                    new_lines = &new_version->lines;
            }
            patches.push_back(diff_files(old_path, new_path, *old_lines, *new_lines, context));
        } catch (const BinaryFile&) {
            FilePatch binary;
            binary.old_path = old_path;
            binary.new_path = new_path;
            binary.is_binary = true;
            patches.push_back(std::move(binary));
        }
    }
    return patches;
}

std::string Repo::diff_text(const CommitId& rev, std::size_t context)
{
    return render(diff_patches(rev, context));
}

std::vector<CommitId> Repo::list_commits()
{
    RunResult result = run_command({ "git", "rev-list", "HEAD" }, m_path);
    if (result.exit_code != 0)
        throw GitCommandError("rev-list failed: " + std::string(strip(result.err)));
    std::vector<CommitId> ids;
    for (const auto& line : split_lines(result.out))
        if (line.size() == 40)
            ids.emplace_back(line);
    return ids;
}

} // namespace szzkit
