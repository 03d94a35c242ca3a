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

#ifndef SZZKIT_RUNNER_HPP
#define SZZKIT_RUNNER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "szzkit/config.hpp"
#include "szzkit/dataset.hpp"
#include "szzkit/gateway.hpp"
#include "szzkit/metrics.hpp"
#include "szzkit/pipeline.hpp"
#include "szzkit/repo.hpp"

namespace szzkit {

// All supported algorithm names: b, ag, ma, l, r, llm4szz.
bool is_known_algorithm(const std::string& name);

// Runs one algorithm on one fix. Classic variants fill predicted with the
// candidate set (or the single selection for l/r) under route "classic";
// llm4szz delegates to the pipeline (which must be non-null for it).
Prediction run_algorithm(Repo& repo, const CommitId& fix, const std::string& algorithm,
                         Language language, Pipeline* pipeline);

struct EvalOptions {
    std::string algorithm = "b";
    int repeats = 3;
    std::string repos_dir;
    Config config;
    // Responder installed when llm.mode = scripted (tests; the CLI installs
    // a conservative default).
    ScriptedResponder scripted_responder;
    std::shared_ptr<Transport> transport; // test injection for live/record
    std::function<bool()> interrupted;    // polled between entries
};

struct EvalResult {
    std::string report_json; // the full report document
    bool interrupted = false;
    std::vector<Metrics> per_repeat;
    Metrics averaged;
};

// Evaluates the dataset `repeats` times and builds the report: per-entry
// predictions (first repeat), per-repeat and averaged metrics, small/large
// breakdowns, skipped entries. Entries whose repository is missing under
// repos_dir are skipped and recorded. Missing repos_dir throws
// MissingRepository before any work.
EvalResult run_eval(const std::vector<DatasetEntry>& dataset, const EvalOptions& options);

} // namespace szzkit

#endif
