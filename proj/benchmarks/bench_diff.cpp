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

#include "szzkit/line_map.hpp"
#include "szzkit/myers.hpp"
#include "szzkit/patch.hpp"
#include "szzkit/util.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

namespace {

// An edited copy of a synthetic file: every `stride`-th line changed, one
// small block inserted and one deleted.
std::pair<std::vector<std::string>, std::vector<std::string>> make_pair(std::size_t lines,
                                                                        std::size_t stride)
{
    szzkit::SplitMix64 rng(42);
    std::vector<std::string> old_lines;
    old_lines.reserve(lines);
    for (std::size_t i = 0; i < lines; ++i)
        old_lines.push_back("line_" + std::to_string(i) + "_"
                            + std::to_string(rng.below(1000)));
    std::vector<std::string> new_lines = old_lines;
    for (std::size_t i = 0; i < new_lines.size(); i += stride)
        new_lines[i] += "_edited";
    new_lines.insert(new_lines.begin() + static_cast<long>(lines / 3),
                     { "inserted_a", "inserted_b", "inserted_c" });
    new_lines.erase(new_lines.begin() + static_cast<long>(2 * lines / 3),
                    new_lines.begin() + static_cast<long>(2 * lines / 3 + 4));
    return { std::move(old_lines), std::move(new_lines) };
}

void bm_diff_lines(benchmark::State& state)
{
    auto [old_lines, new_lines] = make_pair(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        auto pairs = szzkit::diff_lines(old_lines, new_lines);
        benchmark::DoNotOptimize(pairs);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_line_map_build(benchmark::State& state)
{
    auto [old_lines, new_lines] = make_pair(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        szzkit::LineMap map = szzkit::LineMap::build(old_lines, new_lines);
        benchmark::DoNotOptimize(map);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_diff_files_render(benchmark::State& state)
{
    auto [old_lines, new_lines] = make_pair(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        szzkit::FilePatch patch
            = szzkit::diff_files("a.c", "a.c", old_lines, new_lines, 3);
        std::string text = szzkit::render({ patch });
        benchmark::DoNotOptimize(text);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_parse_unified(benchmark::State& state)
{
    auto [old_lines, new_lines] = make_pair(static_cast<std::size_t>(state.range(0)), 7);
    szzkit::FilePatch patch = szzkit::diff_files("a.c", "a.c", old_lines, new_lines, 3);
    std::string text = szzkit::render({ patch });
    for (auto _ : state) {
        auto parsed = szzkit::parse_unified(text);
        benchmark::DoNotOptimize(parsed);
    }
    state.SetBytesProcessed(state.iterations() * static_cast<long>(text.size()));
}

} // namespace

BENCHMARK(bm_diff_lines)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(bm_line_map_build)->Arg(100)->Arg(1000)->Arg(10000);
BENCHMARK(bm_diff_files_render)->Arg(100)->Arg(1000);
BENCHMARK(bm_parse_unified)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
