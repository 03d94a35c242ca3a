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

#include <doctest.h>

#include <algorithm>

#include "support/oracles.hpp"
#include "support/repo_builder.hpp"
#include "szzkit/errors.hpp"
#include "szzkit/repo.hpp"

using namespace szzkit;
using namespace szzkit::testing;

namespace {

// root adds two files; "edit" rewrites one line of a.c; "move" renames b.c
// with one inserted line; "drop" deletes a.c.
std::unique_ptr<RepoBuilder> small_history(const std::string& dir)
{
    auto builder = std::make_unique<RepoBuilder>(dir);

    ModelCommit root;
    root.name = "root";
    root.message = "initial import";
    root.committer_time = 1690000000;
    root.files["a.c"] = { "alpha one", "alpha two", "alpha three" };
    root.files["b.c"] = { "beta one", "beta two", "beta three", "beta four" };
    builder->add(root);

    ModelCommit edit;
    edit.name = "edit";
    edit.parents = { "root" };
    edit.message = "rewrite alpha two";
    edit.committer_time = 1690000100;
    edit.files = root.files;
    edit.files["a.c"][1] = "alpha two rewritten";
    builder->add(edit);

    ModelCommit move;
    move.name = "move";
    move.parents = { "edit" };
    move.message = "rename b.c";
    move.committer_time = 1690000200;
    move.files = edit.files;
    move.files.erase("b.c");
    move.files["sub/renamed.c"]
        = { "beta one", "beta half", "beta two", "beta three", "beta four" };
    move.renamed_from["sub/renamed.c"] = "b.c";
    builder->add(move);

    ModelCommit drop;
    drop.name = "drop";
    drop.parents = { "move" };
    drop.message = "drop a.c";
    drop.committer_time = 1690000300;
    drop.files = move.files;
    drop.files.erase("a.c");
    builder->add(drop);

    builder->finish();
    return builder;
}

} // namespace

TEST_CASE("resolve_commit handles ids, prefixes, and refs")
{
    TempDir dir("szzkit-repo");
    auto builder = small_history(dir.sub("r"));
    Repo repo(builder->dir());

    CommitId root = builder->id("root");

    CHECK(repo.resolve_commit(root.hex()).id == root);
    CHECK(repo.resolve_commit(root.hex().substr(0, 10)).id == root);
    CHECK(repo.resolve_commit("HEAD").id == builder->id("drop"));
    CHECK(repo.resolve_commit("HEAD^").id == builder->id("move"));

    CHECK_THROWS_AS(repo.resolve_commit("no-such-branch"), UnknownRef);
    CHECK_THROWS_AS(repo.resolve_commit(std::string(40, '0')), UnknownRef);
    CHECK_THROWS_AS(repo.resolve_commit(""), UnknownRef);
}

TEST_CASE("resolve_commit rejects an ambiguous prefix")
{
    TempDir dir("szzkit-repo");
    RepoBuilder builder(dir.sub("chain"));
    for (int i = 1; i <= 800; ++i) {
        ModelCommit c;
        c.name = "c" + std::to_string(i);
        if (i > 1)
            c.parents = { "c" + std::to_string(i - 1) };
        c.message = "step " + std::to_string(i);
        c.committer_time = 1700000000 + i * 7;
        c.files["n.txt"] = { "value " + std::to_string(i) };
        builder.add(c);
    }
    builder.finish();

    std::vector<std::string> hexes;
    for (const auto& commit : builder.commits())
        hexes.push_back(builder.id(commit.name).hex());
    std::sort(hexes.begin(), hexes.end());
    std::size_t best = 0;
    std::string first, second;
    for (std::size_t i = 1; i < hexes.size(); ++i) {
        std::size_t common = 0;
        while (common < 40 && hexes[i - 1][common] == hexes[i][common])
            ++common;
        if (common > best) {
            best = common;
            first = hexes[i - 1];
            second = hexes[i];
        }
    }
    // This chain is deterministic, so the collision length is a constant.
    REQUIRE(best >= 4);

    Repo repo(builder.dir());
    CHECK_THROWS_AS(repo.resolve_commit(first.substr(0, best)), AmbiguousPrefix);
    CHECK(repo.resolve_commit(first.substr(0, best + 1)).id.hex() == first);
}

TEST_CASE("meta carries parents, identity, and message")
{
    TempDir dir("szzkit-repo");
    auto builder = small_history(dir.sub("r"));
    Repo repo(builder->dir());

    CommitMeta root = repo.meta(builder->id("root"));
    CHECK(root.is_root());
    CHECK(root.message == "initial import");
    CHECK(root.committer_time == 1690000000);
    CHECK(root.committer_name == "Dev One");
    CHECK(root.committer_email == "dev@example.org");

    CommitMeta edit = repo.meta(builder->id("edit"));
    REQUIRE(edit.parents.size() == 1);
    CHECK(edit.parents[0] == builder->id("root"));
    CHECK_FALSE(edit.is_merge());
}

TEST_CASE("file_at returns snapshots and detects binaries")
{
    TempDir dir("szzkit-repo");
    RepoBuilder builder(dir.sub("r"));
    ModelCommit root;
    root.name = "root";
    root.message = "add files";
    root.committer_time = 1690000000;
    root.files["text.c"] = { "one", "two" };
    root.files["blob.bin"] = { std::string("ab\0cd", 5) };
    builder.add(root);
    builder.finish();

    Repo repo(builder.dir());
    CommitId id = builder.id("root");

    auto text = repo.file_at(id, "text.c");
    REQUIRE(text.has_value());
    CHECK(text->lines == std::vector<std::string> { "one", "two" });
    CHECK(text->path == "text.c");
    CHECK(text->commit == id);

    CHECK_FALSE(repo.file_at(id, "absent.c").has_value());
    CHECK_THROWS_AS(repo.file_at(id, "blob.bin"), BinaryFile);
}

TEST_CASE("changed_files classifies adds, edits, renames, and deletes")
{
    TempDir dir("szzkit-repo");
    auto builder = small_history(dir.sub("r"));
    Repo repo(builder->dir());

    auto root_changes = repo.changed_files(builder->id("root"));
    REQUIRE(root_changes.size() == 2);
    CHECK(root_changes[0].kind == ChangeKind::Added);
    CHECK(root_changes[0].new_path == "a.c");
    CHECK(root_changes[1].kind == ChangeKind::Added);
    CHECK(root_changes[1].new_path == "b.c");

    auto edit_changes = repo.changed_files(builder->id("edit"));
    REQUIRE(edit_changes.size() == 1);
    CHECK(edit_changes[0].kind == ChangeKind::Modified);
    CHECK(edit_changes[0].old_path == "a.c");
    CHECK(edit_changes[0].new_path == "a.c");

    auto move_changes = repo.changed_files(builder->id("move"));
    REQUIRE(move_changes.size() == 1);
    CHECK(move_changes[0].kind == ChangeKind::Renamed);
    CHECK(move_changes[0].old_path == "b.c");
    CHECK(move_changes[0].new_path == "sub/renamed.c");

    auto drop_changes = repo.changed_files(builder->id("drop"));
    REQUIRE(drop_changes.size() == 1);
    CHECK(drop_changes[0].kind == ChangeKind::Deleted);
    CHECK(drop_changes[0].old_path == "a.c");
    CHECK(drop_changes[0].new_path == "");
}

TEST_CASE("unrelated add and delete do not pair as a rename")
{
    TempDir dir("szzkit-repo");
    RepoBuilder builder(dir.sub("r"));
    ModelCommit root;
    root.name = "root";
    root.message = "start";
    root.committer_time = 1690000000;
    root.files["old.c"] = { "left one", "left two", "left three" };
    builder.add(root);
    ModelCommit swap;
    swap.name = "swap";
    swap.parents = { "root" };
    swap.message = "replace file";
    swap.committer_time = 1690000100;
    swap.files["new.c"] = { "right one", "right two", "right three" };
    builder.add(swap);
    builder.finish();

    Repo repo(builder.dir());
    auto changes = repo.changed_files(builder.id("swap"));
    REQUIRE(changes.size() == 2);
    CHECK(changes[0].kind == ChangeKind::Added);
    CHECK(changes[0].new_path == "new.c");
    CHECK(changes[1].kind == ChangeKind::Deleted);
    CHECK(changes[1].old_path == "old.c");
}

TEST_CASE("trace_line attributes lines across edits and renames")
{
    TempDir dir("szzkit-repo");
    auto builder = small_history(dir.sub("r"));
    Repo repo(builder->dir());
    CommitId head = builder->id("drop");

    // Untouched since the root: passes through edit/move/drop.
    LineOrigin origin = repo.trace_line(head, "sub/renamed.c", 1);
    CHECK(origin.commit == builder->id("root"));
    CHECK(origin.path == "b.c");
    CHECK(origin.line == 1);

    // Inserted by the rename commit itself.
    origin = repo.trace_line(head, "sub/renamed.c", 2);
    CHECK(origin.commit == builder->id("move"));
    CHECK(origin.path == "sub/renamed.c");
    CHECK(origin.line == 2);

    // Shifted by the insertion: "beta two" is line 3 now, line 2 at b.c.
    origin = repo.trace_line(head, "sub/renamed.c", 3);
    CHECK(origin.commit == builder->id("root"));
    CHECK(origin.path == "b.c");
    CHECK(origin.line == 2);

    // The rewritten line of a.c belongs to "edit" at the pre-drop revision.
    origin = repo.trace_line(builder->id("move"), "a.c", 2);
    CHECK(origin.commit == builder->id("edit"));
    CHECK(origin.path == "a.c");
    CHECK(origin.line == 2);

    CHECK_THROWS_AS(repo.trace_line(head, "missing.c", 1), FileAbsent);
    CHECK_THROWS_AS(repo.trace_line(head, "sub/renamed.c", 0), LineOutOfRange);
    CHECK_THROWS_AS(repo.trace_line(head, "sub/renamed.c", 99), LineOutOfRange);
}

TEST_CASE("list_commits returns newest first")
{
    TempDir dir("szzkit-repo");
    auto builder = small_history(dir.sub("r"));
    Repo repo(builder->dir());

    auto commits = repo.list_commits();
    REQUIRE(commits.size() == 4);
    CHECK(commits[0] == builder->id("drop"));
    CHECK(commits[1] == builder->id("move"));
    CHECK(commits[2] == builder->id("edit"));
    CHECK(commits[3] == builder->id("root"));
}

TEST_CASE("line_map is cached per (rev, old, new)")
{
    TempDir dir("szzkit-repo");
    auto builder = small_history(dir.sub("r"));
    Repo repo(builder->dir());

    auto first = repo.line_map(builder->id("edit"), "a.c", "a.c");
    auto second = repo.line_map(builder->id("edit"), "a.c", "a.c");
    CHECK(first.get() == second.get());
    CHECK(first->to_old(1) == 1);
    CHECK(first->to_old(2) == std::nullopt);
}

TEST_CASE("trace_line equals the provenance oracle on generated histories")
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        TempDir dir("szzkit-repo");
        auto builder = generate_history(dir.sub("gen"), seed);
        ProvenanceOracle oracle(*builder);
        Repo repo(builder->dir());

        // Every line of every file at the tip and at one interior commit.
        std::vector<const ModelCommit*> probes;
        const auto& commits = builder->commits();
        probes.push_back(&commits.back());
        probes.push_back(&commits[commits.size() / 2]);
        for (const ModelCommit* probe : probes) {
            CommitId rev = builder->id(probe->name);
            for (const auto& [path, lines] : probe->files) {
                const auto& expected = oracle.origins(probe->name, path);
                REQUIRE(expected.size() == lines.size());
                for (std::size_t n = 1; n <= lines.size(); ++n) {
                    LineOrigin got = repo.trace_line(rev, path, n);
                    const OracleOrigin& want = expected[n - 1];
                    REQUIRE(got.commit == builder->id(want.commit));
                    REQUIRE(got.path == want.path);
                    REQUIRE(got.line == want.line);
                }
            }
        }
    }
}
