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
#include "szzkit/repo.hpp"
#include "szzkit/subprocess.hpp"

#include <benchmark/benchmark.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

namespace {

namespace fs = std::filesystem;

void git(const std::string& cwd, const std::vector<std::string>& args)
{
    std::vector<std::string> argv { "git", "-c", "user.name=bench", "-c",
                                    "user.email=bench@example.com" };
    argv.insert(argv.end(), args.begin(), args.end());
    szzkit::RunResult result = szzkit::run_command(argv, cwd);
    if (result.exit_code != 0)
        throw std::runtime_error("git failed: " + result.err);
}

// A linear history that keeps rewriting one file, so trace_line has to hop
// through many commits.
class BenchRepo {
public:
    BenchRepo()
    {
        m_dir = fs::temp_directory_path() / ("szzkit-bench-" + std::to_string(::getpid()));
        fs::create_directories(m_dir);
        git(m_dir.string(), { "init", "-q", "-b", "main" });
        for (int commit = 0; commit < 60; ++commit) {
            std::ofstream out(m_dir / "main.c");
            for (int line = 0; line < 200; ++line) {
                int changed_at = (line * 7919 + 13) % 60;
                out << "int value_" << line << " = " << std::min(commit, changed_at)
                    << ";\n";
            }
            out.close();
            git(m_dir.string(), { "add", "main.c" });
            git(m_dir.string(),
                { "-c", "commit.gpgsign=false", "commit", "-q", "-m",
                  "update " + std::to_string(commit), "--date",
                  "2020-01-01T00:00:" + std::to_string(commit % 60) });
        }
        m_repo = std::make_unique<szzkit::Repo>(m_dir.string());
        m_head = m_repo->resolve_commit("HEAD").id;
    }

    ~BenchRepo()
    {
        m_repo.reset();
        std::error_code ec;
        fs::remove_all(m_dir, ec);
    }

    szzkit::Repo& repo() { return *m_repo; }
    const szzkit::CommitId& head() const { return m_head; }

private:
    fs::path m_dir;
    std::unique_ptr<szzkit::Repo> m_repo;
    szzkit::CommitId m_head;
};

BenchRepo& shared_repo()
{
    static BenchRepo instance;
    return instance;
}

void bm_trace_line(benchmark::State& state)
{
    BenchRepo& bench = shared_repo();
    std::size_t line = 1;
    for (auto _ : state) {
        szzkit::LineOrigin origin
            = bench.repo().trace_line(bench.head(), "main.c", (line % 200) + 1);
        benchmark::DoNotOptimize(origin);
        ++line;
    }
}

void bm_changed_files(benchmark::State& state)
{
    BenchRepo& bench = shared_repo();
    for (auto _ : state) {
        auto changed = bench.repo().changed_files(bench.head());
        benchmark::DoNotOptimize(changed);
    }
}

void bm_b_szz(benchmark::State& state)
{
    BenchRepo& bench = shared_repo();
    for (auto _ : state) {
        szzkit::CandidateSet set = szzkit::b_szz(bench.repo(), bench.head());
        benchmark::DoNotOptimize(set);
    }
}

} // namespace

BENCHMARK(bm_trace_line);
BENCHMARK(bm_changed_files);
BENCHMARK(bm_b_szz);

BENCHMARK_MAIN();
