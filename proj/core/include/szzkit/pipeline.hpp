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

#ifndef SZZKIT_PIPELINE_HPP
#define SZZKIT_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "szzkit/classic.hpp"
#include "szzkit/gateway.hpp"
#include "szzkit/noise.hpp"
#include "szzkit/repo.hpp"
#include "szzkit/types.hpp"

namespace szzkit {

struct PipelineOptions {
    int prepare_runs = 3;          // root-cause samples over shuffled patches
    std::size_t window_lines = 3;  // margin for out-of-function context regions
    std::size_t initial_margin = 3;// starting margin for refined contexts
    std::size_t top_n = 1;         // ranked statements kept per file (rank route)
    std::size_t candidate_cap = 16;// max candidates scanned before falling back
    std::size_t hint_chunk_bytes = 16000; // split hint contexts larger than this
    Language language = Language::C;
    std::uint64_t seed = 0;        // drives file shuffles and label ordering
    double temperature = 0.0;
    int max_output_tokens = 2048;
};

struct RootCauseAnalysis {
    std::string modification_summary;
    std::string root_cause;
    std::vector<std::string> relevant_files; // ⊆ changed files, sorted, non-empty when any changed
};

struct HintStatement {
    std::string path;             // path in the version where lines resolve
    std::string text;
    std::string reason;
    std::vector<std::size_t> lines; // 1-based resolved lines (buggy: fix^1; fixing: fix)
};

struct Hint {
    std::vector<HintStatement> buggy_statements;  // resolvable only
    std::vector<HintStatement> fixing_statements;
};

enum class VerdictValue { Buggy, Clean, Unparseable };

// Candidate scan outcome: the chosen inducing commit (if any) plus the full
// candidate list in scan order (descending committer_time, ties by id
// descending).
struct ContextScan {
    std::optional<CommitId> chosen;
    std::vector<Candidate> candidates;
};

struct Prediction {
    CommitId fix;
    std::vector<CommitId> predicted;       // sorted ascending; singletons for llm routes
    std::string route;                     // context_enhanced | rank_based | empty | classic
    std::string algorithm;                 // set for classic runs only
    std::string root_cause;
    std::vector<Candidate> candidates;     // scan order when a scan ran, else empty
    UsageLedger::Snapshot usage;
    std::vector<std::string> diagnostics;
};

// Serializes one Prediction (stable field order, 2-space indent).
std::string prediction_to_json(const Prediction& prediction);

// The LLM-assisted inducing-commit search: preparation, hint + ability
// check, then the context-enhanced scan with a rank-based fallback.
class Pipeline {
public:
    Pipeline(Gateway& gateway, PipelineOptions options);

    RootCauseAnalysis prepare(Repo& repo, const CommitId& fix,
                              std::vector<std::string>& diagnostics);

    Hint generate_hint(Repo& repo, const CommitId& fix, const RootCauseAnalysis& analysis,
                       std::vector<std::string>& diagnostics);

    bool ability_check(Repo& repo, const CommitId& fix, const RootCauseAnalysis& analysis,
                       const Hint& hint, std::vector<std::string>& diagnostics);

    ContextScan context_enhanced_identify(Repo& repo, const CommitId& fix,
                                          const RootCauseAnalysis& analysis, const Hint& hint,
                                          std::vector<std::string>& diagnostics);

    std::vector<CommitId> rank_based_identify(Repo& repo, const CommitId& fix,
                                              const RootCauseAnalysis& analysis,
                                              std::size_t top_n,
                                              std::vector<std::string>& diagnostics);

    // Full run. Repo and content failures yield route=empty with an error
    // diagnostic; gateway failures (provider, cassette miss, missing
    // responder) propagate, except inside the ability check and the rank
    // fallback where they conservatively degrade. Usage is the ledger delta
    // of this run.
    Prediction run(Repo& repo, const CommitId& fix);

    const PipelineOptions& options() const { return m_options; }

private:
    Gateway& m_gateway;
    PipelineOptions m_options;
};

} // namespace szzkit

#endif
