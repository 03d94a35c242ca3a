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

#include "szzkit/config.hpp"
#include "szzkit/dataset.hpp"
#include "szzkit/errors.hpp"
#include "szzkit/gateway.hpp"
#include "szzkit/metrics.hpp"
#include "szzkit/mine.hpp"
#include "szzkit/pipeline.hpp"
#include "szzkit/repo.hpp"
#include "szzkit/runner.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::atomic<bool> g_interrupted { false };

void handle_sigint(int)
{
    g_interrupted.store(true, std::memory_order_relaxed);
}

void install_sigint_handler()
{
    struct sigaction action {};
    action.sa_handler = handle_sigint;
    sigemptyset(&action.sa_mask);
    action.sa_flags = 0; // no SA_RESTART: let blocking reads bail out
    sigaction(SIGINT, &action, nullptr);
}

// Exit codes: 0 success, 1 usage/config, 2 data or repository problem,
// 3 provider problem.
int exit_code_for(const szzkit::Error& e)
{
    if (dynamic_cast<const szzkit::ProviderError*>(&e)
        || dynamic_cast<const szzkit::CassetteMiss*>(&e)
        || dynamic_cast<const szzkit::ResponderUnset*>(&e))
        return 3;
    if (dynamic_cast<const szzkit::ConfigError*>(&e))
        return 1;
    return 2;
}

void write_atomic(const std::string& target, const std::string& content)
{
    std::string tmp = target + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw szzkit::Error("cannot write " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw szzkit::Error("short write to " + tmp);
    }
    fs::rename(tmp, target);
}

// Deterministic conservative replies so scripted mode works without an
// injected responder: no files, no statements, every verdict clean.
std::string default_scripted_reply(const szzkit::ChatRequest& request)
{
    if (request.tag == "summarize")
        return "```\nSUMMARY: no summary available\n```\n";
    if (request.tag == "root_cause")
        return "```\nROOT_CAUSE: unspecified\n```\n";
    if (request.tag == "ability")
        return "```\nVERSION1: buggy\nVERSION2: buggy\n```\n";
    if (request.tag == "containment")
        return "```\nCONTAINS: no\n```\n";
    if (request.tag == "verdict")
        return "```\nVERDICT: clean\nRATIONALE: no evidence\n```\n";
    if (request.tag == "rank")
        return "```\nORDER: none\n```\n";
    return "```\nNOTE: none\n```\n"; // hint, statements
}

szzkit::Language parse_language(const std::string& name)
{
    if (name == "c")
        return szzkit::Language::C;
    if (name == "java")
        return szzkit::Language::Java;
    throw szzkit::ConfigError("language must be \"c\" or \"java\", got \"" + name + "\"");
}

struct CommonFlags {
    std::string config_path;
    std::string llm_mode;
    std::string cassette_dir;
    std::size_t workers = 0;

    szzkit::Config load() const
    {
        szzkit::Config config;
        if (!config_path.empty())
            config = szzkit::load_config(config_path);
        if (!llm_mode.empty())
            config.llm.mode = llm_mode;
        if (!cassette_dir.empty())
            config.llm.cassette_dir = cassette_dir;
        if (workers > 0)
            config.pipeline.workers = workers;
        szzkit::validate_config(config);
        return config;
    }
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags)
{
    cmd->add_option("--config", flags.config_path, "JSON config file (flags win over it)");
    cmd->add_option("--llm-mode", flags.llm_mode,
                    "override llm.mode: live, record, replay, or scripted");
    cmd->add_option("--cassette-dir", flags.cassette_dir, "override llm.cassette_dir");
    cmd->add_option("--workers", flags.workers, "override pipeline.workers");
}

void require_llm_preconditions(const szzkit::Config& config)
{
    szzkit::LlmMode mode = szzkit::parse_llm_mode(config.llm.mode);
    if ((mode == szzkit::LlmMode::Live || mode == szzkit::LlmMode::Record)
        && config.llm.endpoint.empty())
        throw szzkit::ConfigError("llm.endpoint is required for live/record mode");
    if ((mode == szzkit::LlmMode::Record || mode == szzkit::LlmMode::Replay)
        && config.llm.cassette_dir.empty())
        throw szzkit::ConfigError("llm.cassette_dir is required for record/replay mode");
}

int run_trace(const std::string& repo_path, const std::string& rev, const std::string& file,
              std::size_t line)
{
    szzkit::Repo repo(repo_path);
    szzkit::CommitMeta meta = repo.resolve_commit(rev);
    szzkit::LineOrigin origin = repo.trace_line(meta.id, file, line);
    ordered_json j;
    j["commit"] = origin.commit.hex();
    j["path"] = origin.path;
    j["line"] = origin.line;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_run(const std::string& repo_path, const std::string& fix_ref,
            const std::string& algorithm, const std::string& language_name,
            const CommonFlags& flags, const std::string& out_path)
{
    if (!szzkit::is_known_algorithm(algorithm))
        throw szzkit::ConfigError("unknown algorithm: " + algorithm
                                  + " (expected b, ag, ma, l, r, or llm4szz)");
    szzkit::Language language = parse_language(language_name);
    szzkit::Config config = flags.load();

    szzkit::Repo repo(repo_path);
    szzkit::CommitId fix = repo.resolve_commit(fix_ref).id;

    szzkit::Prediction prediction;
    if (algorithm == "llm4szz") {
        require_llm_preconditions(config);
        szzkit::Gateway gateway(szzkit::gateway_options_from(config));
        if (gateway.mode() == szzkit::LlmMode::Scripted)
            gateway.set_responder(default_scripted_reply);
        szzkit::Pipeline pipeline(gateway, szzkit::pipeline_options_from(config, language));
        prediction = szzkit::run_algorithm(repo, fix, algorithm, language, &pipeline);
    } else {
        prediction = szzkit::run_algorithm(repo, fix, algorithm, language, nullptr);
    }

    std::string json = szzkit::prediction_to_json(prediction) + "\n";
    std::cout << json;
    if (!out_path.empty())
        write_atomic(out_path, json);
    return 0;
}

int run_eval_command(const std::string& dataset_path, const std::string& repos_dir,
                     const std::string& algorithm, int repeats, const CommonFlags& flags,
                     const std::string& out_path)
{
    if (!szzkit::is_known_algorithm(algorithm))
        throw szzkit::ConfigError("unknown algorithm: " + algorithm
                                  + " (expected b, ag, ma, l, r, or llm4szz)");
    if (repeats < 1)
        throw szzkit::ConfigError("--repeats must be >= 1");
    szzkit::Config config = flags.load();
    if (algorithm == "llm4szz")
        require_llm_preconditions(config);

    std::vector<szzkit::DatasetEntry> dataset = szzkit::load_dataset(dataset_path);

    szzkit::EvalOptions options;
    options.algorithm = algorithm;
    options.repeats = repeats;
    options.repos_dir = !repos_dir.empty() ? repos_dir : config.paths.repos_dir;
    options.config = config;
    if (szzkit::parse_llm_mode(config.llm.mode) == szzkit::LlmMode::Scripted)
        options.scripted_responder = default_scripted_reply;
    options.interrupted = [] { return g_interrupted.load(std::memory_order_relaxed); };

    szzkit::EvalResult result = szzkit::run_eval(dataset, options);
    std::cout << result.report_json;
    if (!out_path.empty())
        write_atomic(out_path, result.report_json);
    if (result.interrupted)
        std::cerr << "interrupted: partial report covers completed entries only\n";
    return 0;
}

int run_mine(const std::string& repo_path, const std::string& mode_name,
             std::optional<std::int64_t> since, const std::string& out_path)
{
    szzkit::MineMode mode;
    if (mode_name == "fixes-tag")
        mode = szzkit::MineMode::FixesTag;
    else if (mode_name == "keyword")
        mode = szzkit::MineMode::Keyword;
    else
        throw szzkit::ConfigError("mine --mode must be fixes-tag or keyword, got \""
                                  + mode_name + "\"");

    szzkit::Repo repo(repo_path);
    std::vector<std::string> diagnostics;
    std::vector<szzkit::MinedEntry> mined = szzkit::mine_fixes(repo, mode, since, diagnostics);

    std::string body;
    for (const szzkit::MinedEntry& entry : mined) {
        ordered_json j;
        j["fix"] = entry.fix.hex();
        if (mode == szzkit::MineMode::FixesTag) {
            j["inducing"] = ordered_json::array();
            for (const szzkit::CommitId& id : entry.inducing)
                j["inducing"].push_back(id.hex());
        }
        body += j.dump() + "\n";
    }
    std::cout << body;
    if (!out_path.empty())
        write_atomic(out_path, body);
    for (const std::string& d : diagnostics)
        std::cerr << d << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "szzkit - identifies bug-inducing commits from bug-fixing commits" };
    app.require_subcommand(1);

    // trace
    std::string trace_repo, trace_rev, trace_file;
    std::size_t trace_line_no = 0;
    CLI::App* trace = app.add_subcommand("trace", "Trace one line back to its origin commit");
    trace->add_option("--repo", trace_repo, "repository path")->required();
    trace->add_option("--rev", trace_rev, "revision holding the line")->required();
    trace->add_option("--file", trace_file, "file path at that revision")->required();
    trace->add_option("--line", trace_line_no, "1-based line number")->required();

    // run
    std::string run_repo, run_fix, run_algorithm, run_out;
    std::string run_language = "c";
    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "Identify inducing commits for one fix");
    run->add_option("--repo", run_repo, "repository path")->required();
    run->add_option("--fix", run_fix, "bug-fixing commit (id, prefix, or ref)")->required();
    run->add_option("--algorithm", run_algorithm, "b, ag, ma, l, r, or llm4szz")->required();
    run->add_option("--language", run_language, "c or java (default c)");
    run->add_option("--out", run_out, "also write the prediction to this file (atomic)");
    add_common_flags(run, run_flags);

    // eval
    std::string eval_dataset, eval_repos_dir, eval_algorithm, eval_out;
    int eval_repeats = 3;
    CommonFlags eval_flags;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate an algorithm over a dataset");
    eval->add_option("--dataset", eval_dataset, "JSON-Lines dataset file")->required();
    eval->add_option("--repos-dir", eval_repos_dir, "directory holding the repositories");
    eval->add_option("--algorithm", eval_algorithm, "b, ag, ma, l, r, or llm4szz")->required();
    eval->add_option("--repeats", eval_repeats, "evaluation repeats (default 3)");
    eval->add_option("--out", eval_out, "also write the report to this file (atomic)");
    add_common_flags(eval, eval_flags);

    // mine
    std::string mine_repo, mine_mode, mine_out;
    std::int64_t mine_since = -1;
    CLI::App* mine = app.add_subcommand("mine", "Mine fix/inducing pairs from history");
    mine->add_option("--repo", mine_repo, "repository path")->required();
    mine->add_option("--mode", mine_mode, "fixes-tag or keyword")->required();
    mine->add_option("--since", mine_since, "keep fixes with committer time >= this epoch");
    mine->add_option("--out", mine_out, "also write the entries to this file (atomic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help on stdout, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n";
        CLI::App* failed = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        std::cerr << failed->help();
        return 1;
    }

    install_sigint_handler();

    try {
        if (trace->parsed())
            return run_trace(trace_repo, trace_rev, trace_file, trace_line_no);
        if (run->parsed())
            return run_run(run_repo, run_fix, run_algorithm, run_language, run_flags, run_out);
        if (eval->parsed())
            return run_eval_command(eval_dataset, eval_repos_dir, eval_algorithm, eval_repeats,
                                    eval_flags, eval_out);
        if (mine->parsed())
            return run_mine(mine_repo, mine_mode,
                            mine_since >= 0 ? std::optional<std::int64_t>(mine_since)
                                            : std::nullopt,
                            mine_out);
    } catch (const szzkit::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
