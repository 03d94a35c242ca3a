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

#include "szzkit/runner.hpp"

#include "szzkit/classic.hpp"
#include "szzkit/errors.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <ctime>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace szzkit {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

bool is_known_algorithm(const std::string& name)
{
    return name == "b" || name == "ag" || name == "ma" || name == "l" || name == "r"
        || name == "llm4szz";
}

Prediction run_algorithm(Repo& repo, const CommitId& fix, const std::string& algorithm,
                         Language language, Pipeline* pipeline)
{
    if (algorithm == "llm4szz") {
        if (!pipeline)
            throw Error("llm4szz requires a configured pipeline");
        Prediction prediction = pipeline->run(repo, fix);
        prediction.algorithm = algorithm;
        return prediction;
    }

    Prediction prediction;
    prediction.fix = fix;
    prediction.route = "classic";
    prediction.algorithm = algorithm;

    CandidateSet set;
    if (algorithm == "b")
        set = b_szz(repo, fix);
    else if (algorithm == "ag")
        set = ag_szz(repo, fix, language);
    else if (algorithm == "ma" || algorithm == "l" || algorithm == "r")
        set = ma_szz(repo, fix, language);
    else
        throw Error("unknown algorithm: " + algorithm);

    prediction.candidates = set.candidates;
    if (algorithm == "l" || algorithm == "r") {
        auto chosen = select_single(
            set, algorithm == "l" ? SelectStrategy::Largest : SelectStrategy::Latest);
        if (chosen)
            prediction.predicted.push_back(*chosen);
    } else {
        for (const Candidate& candidate : set.candidates)
            prediction.predicted.push_back(candidate.id);
    }
    return prediction;
}

namespace {

std::string iso_utc_now()
{
    std::time_t now = std::time(nullptr);
    std::tm tm {};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

ordered_json metrics_to_json(const Metrics& metrics)
{
    ordered_json j;
    j["precision"] = metrics.precision;
    j["recall"] = metrics.recall;
    j["f1"] = metrics.f1;
    j["tp"] = metrics.tp;
    j["fp"] = metrics.fp;
    j["fn"] = metrics.fn;
    return j;
}

// One worker's lazily opened repositories, sharing commit caches across
// workers via per-repo MetaCaches.
class RepoPool {
public:
    RepoPool(std::string repos_dir,
             std::map<std::string, std::shared_ptr<MetaCache>>& caches)
        : m_repos_dir(std::move(repos_dir))
        , m_caches(caches)
    {
    }

    Repo& open(const std::string& name)
    {
        auto it = m_repos.find(name);
        if (it == m_repos.end()) {
            fs::path path = fs::path(m_repos_dir) / name;
            it = m_repos.emplace(name, std::make_unique<Repo>(path.string(), m_caches.at(name)))
                     .first;
        }
        return *it->second;
    }

private:
    std::string m_repos_dir;
    std::map<std::string, std::shared_ptr<MetaCache>>& m_caches;
    std::map<std::string, std::unique_ptr<Repo>> m_repos;
};

} // namespace

EvalResult run_eval(const std::vector<DatasetEntry>& dataset, const EvalOptions& options)
{
    if (!is_known_algorithm(options.algorithm))
        throw Error("unknown algorithm: " + options.algorithm);
    if (options.repos_dir.empty() || !fs::is_directory(options.repos_dir))
        throw MissingRepository("repos directory not found: " + options.repos_dir);

    Gateway gateway(gateway_options_from(options.config), options.transport);
    if (options.scripted_responder)
        gateway.set_responder(options.scripted_responder);

    // Pre-flight: decide per entry whether it is evaluable, resolve the fix,
    // and classify its size. Failures here skip the entry in every repeat.
    struct EntryState {
        bool skipped = false;
        std::string skip_reason;
        CommitId fix;
        SizeClass size = SizeClass::Small;
    };
    std::map<std::string, std::shared_ptr<MetaCache>> caches;
    for (const DatasetEntry& entry : dataset)
        if (!caches.count(entry.repo_name))
            caches.emplace(entry.repo_name, std::make_shared<MetaCache>());

    std::vector<EntryState> states(dataset.size());
    {
        RepoPool pool(options.repos_dir, caches);
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            const DatasetEntry& entry = dataset[i];
            try {
                Repo& repo = pool.open(entry.repo_name);
                states[i].fix = repo.resolve_commit(entry.fix).id;
                states[i].size = classify_size(repo, states[i].fix);
            } catch (const Error& e) {
                states[i].skipped = true;
                states[i].skip_reason = e.what();
            }
        }
    }

    std::vector<std::size_t> eval_indices;
    for (std::size_t i = 0; i < dataset.size(); ++i)
        if (!states[i].skipped)
            eval_indices.push_back(i);

    auto is_interrupted = [&]() { return options.interrupted && options.interrupted(); };

    // All repeats over all evaluable entries; completed[i] marks entries
    // finished in the current repeat (an interrupt yields a truncated run).
    std::size_t workers = std::max<std::size_t>(1, options.config.pipeline.workers);
    std::vector<std::vector<Prediction>> repeat_predictions;
    std::vector<std::vector<bool>> repeat_completed;
    bool interrupted = false;

    for (int repeat = 0; repeat < std::max(1, options.repeats) && !interrupted; ++repeat) {
        std::vector<Prediction> predictions(eval_indices.size());
        std::vector<bool> completed(eval_indices.size(), false);
        std::atomic<std::size_t> next { 0 };
        std::atomic<bool> stop { false };

        auto work = [&]() {
            RepoPool pool(options.repos_dir, caches);
            for (;;) {
                if (stop.load(std::memory_order_relaxed))
                    return;
                std::size_t slot = next.fetch_add(1, std::memory_order_relaxed);
                if (slot >= eval_indices.size())
                    return;
                if (is_interrupted()) {
                    stop.store(true, std::memory_order_relaxed);
                    return;
                }
                const DatasetEntry& entry = dataset[eval_indices[slot]];
                const EntryState& state = states[eval_indices[slot]];
                Prediction prediction;
                try {
                    Repo& repo = pool.open(entry.repo_name);
                    Pipeline pipeline(gateway,
                                      pipeline_options_from(options.config, entry.language));
                    prediction = run_algorithm(repo, state.fix, options.algorithm,
                                               entry.language, &pipeline);
                } catch (const Error& e) {
                    prediction = Prediction {};
                    prediction.fix = state.fix;
                    prediction.route = "empty";
                    prediction.diagnostics.push_back(std::string("error: ") + e.what());
                }
                predictions[slot] = std::move(prediction);
                completed[slot] = true;
            }
        };

        if (workers == 1) {
            work();
        } else {
            std::vector<std::thread> threads;
            for (std::size_t w = 0; w < workers; ++w)
                threads.emplace_back(work);
            for (std::thread& t : threads)
                t.join();
        }

        if (stop.load(std::memory_order_relaxed))
            interrupted = true;
        repeat_predictions.push_back(std::move(predictions));
        repeat_completed.push_back(std::move(completed));
    }

    // Metrics per repeat over the entries that finished in that repeat.
    EvalResult result;
    result.interrupted = interrupted;
    for (std::size_t r = 0; r < repeat_predictions.size(); ++r) {
        std::vector<Prediction> predictions;
        std::vector<DatasetEntry> truth;
        for (std::size_t slot = 0; slot < eval_indices.size(); ++slot) {
            if (!repeat_completed[r][slot])
                continue;
            predictions.push_back(repeat_predictions[r][slot]);
            truth.push_back(dataset[eval_indices[slot]]);
        }
        result.per_repeat.push_back(compute_metrics(predictions, truth));
    }

    double precision_sum = 0.0, recall_sum = 0.0, f1_sum = 0.0;
    for (const Metrics& metrics : result.per_repeat) {
        precision_sum += metrics.precision;
        recall_sum += metrics.recall;
        f1_sum += metrics.f1;
    }
    if (!result.per_repeat.empty()) {
        result.averaged = result.per_repeat.front(); // counts from the first repeat
        auto repeats = static_cast<double>(result.per_repeat.size());
        result.averaged.precision = precision_sum / repeats;
        result.averaged.recall = recall_sum / repeats;
        result.averaged.f1 = f1_sum / repeats;
    }

    // Size-stratified metrics from the first repeat.
    Metrics small_metrics, large_metrics;
    if (!repeat_predictions.empty()) {
        std::vector<Prediction> small_p, large_p;
        std::vector<DatasetEntry> small_t, large_t;
        for (std::size_t slot = 0; slot < eval_indices.size(); ++slot) {
            if (!repeat_completed[0][slot])
                continue;
            const EntryState& state = states[eval_indices[slot]];
            auto& p = state.size == SizeClass::Small ? small_p : large_p;
            auto& t = state.size == SizeClass::Small ? small_t : large_t;
            p.push_back(repeat_predictions[0][slot]);
            t.push_back(dataset[eval_indices[slot]]);
        }
        small_metrics = compute_metrics(small_p, small_t);
        large_metrics = compute_metrics(large_p, large_t);
    }

    ordered_json report;
    report["generated_at"] = iso_utc_now();
    report["algorithm"] = options.algorithm;
    report["repeats"] = options.repeats;
    report["interrupted"] = interrupted;
    report["entries"] = ordered_json::array();
    for (std::size_t slot = 0; slot < eval_indices.size(); ++slot) {
        std::size_t i = eval_indices[slot];
        if (repeat_completed.empty() || !repeat_completed[0][slot])
            continue;
        ordered_json row;
        row["repo"] = dataset[i].repo_name;
        row["fix"] = states[i].fix.hex();
        row["inducing"] = dataset[i].inducing;
        row["size"] = states[i].size == SizeClass::Small ? "small" : "large";
        row["prediction"] = ordered_json::parse(prediction_to_json(repeat_predictions[0][slot]));
        report["entries"].push_back(std::move(row));
    }
    report["per_repeat"] = ordered_json::array();
    for (const Metrics& metrics : result.per_repeat)
        report["per_repeat"].push_back(metrics_to_json(metrics));
    report["averaged"] = metrics_to_json(result.averaged);
    report["size_breakdown"] = ordered_json::object();
    report["size_breakdown"]["small"] = metrics_to_json(small_metrics);
    report["size_breakdown"]["large"] = metrics_to_json(large_metrics);
    report["skipped"] = ordered_json::array();
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (!states[i].skipped)
            continue;
        ordered_json row;
        row["repo"] = dataset[i].repo_name;
        row["fix"] = dataset[i].fix;
        row["reason"] = states[i].skip_reason;
        report["skipped"].push_back(std::move(row));
    }

    result.report_json = report.dump(2) + "\n";
    return result;
}

} // namespace szzkit
