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

#include "szzkit/pipeline.hpp"

#include "szzkit/context.hpp"
#include "szzkit/errors.hpp"
#include "szzkit/fenced.hpp"
#include "szzkit/patch.hpp"
#include "szzkit/prompts.hpp"
#include "szzkit/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace szzkit {

namespace {

std::uint64_t derive_seed(const PipelineOptions& options, const CommitId& fix,
                          const std::string& purpose)
{
    return fnv1a64(fix.hex() + ":" + purpose) ^ options.seed;
}

std::string lower(std::string s)
{
    for (char& c : s)
        if (c >= 'A' && c <= 'Z')
            c = static_cast<char>(c - 'A' + 'a');
    return s;
}

const std::string& effective_path(const ChangedFile& file)
{
    return file.kind == ChangeKind::Deleted ? file.old_path : file.new_path;
}

// The path the file had in rev's first parent, or "" when rev created it.
std::string path_at_parent(Repo& repo, const CommitId& rev, const std::string& path)
{
    for (const ChangedFile& file : repo.changed_files(rev)) {
        if (file.kind == ChangeKind::Added && file.new_path == path)
            return "";
        if (file.kind == ChangeKind::Renamed && file.new_path == path)
            return file.old_path;
    }
    return path;
}

// Reported file names are matched to changed paths at component boundaries;
// bare names match any changed path with that suffix.
bool path_suffix_match(const std::string& changed, const std::string& reported)
{
    if (reported.empty())
        return false;
    if (changed == reported)
        return true;
    if (changed.size() > reported.size() && changed.compare(changed.size() - reported.size(),
                                                            std::string::npos, reported)
            == 0
        && changed[changed.size() - reported.size() - 1] == '/')
        return true;
    return false;
}

std::string clean_reported_name(std::string name)
{
    std::string s = std::string(strip(name));
    while (!s.empty() && (s.front() == '`' || s.front() == '"' || s.front() == '\''))
        s.erase(s.begin());
    while (!s.empty() && (s.back() == '`' || s.back() == '"' || s.back() == '\''))
        s.pop_back();
    if (s.rfind("a/", 0) == 0 || s.rfind("b/", 0) == 0)
        s = s.substr(2);
    return s;
}

std::string render_hint_text(const Hint& hint)
{
    std::string out = "Buggy statements:\n";
    for (const HintStatement& s : hint.buggy_statements) {
        out += "- [" + s.path + "] " + s.text;
        if (!s.reason.empty())
            out += " (reason: " + s.reason + ")";
        out.push_back('\n');
    }
    if (!hint.fixing_statements.empty()) {
        out += "Fixing statements:\n";
        for (const HintStatement& s : hint.fixing_statements) {
            out += "- [" + s.path + "] " + s.text;
            if (!s.reason.empty())
                out += " (reason: " + s.reason + ")";
            out.push_back('\n');
        }
    }
    return out;
}

std::string render_statement_list(const Hint& hint)
{
    std::string out;
    for (const HintStatement& s : hint.buggy_statements)
        out += "- " + s.text + "\n";
    return out;
}

std::string region_text(const ContextRegion& region, std::size_t index)
{
    std::string out = "=== Region " + std::to_string(index)
        + (region.kind == RegionKind::Function ? " (function) ===\n" : " (window) ===\n");
    out += "--- before the fix";
    if (region.old_first)
        out += " (lines " + std::to_string(region.old_first) + "-"
            + std::to_string(region.old_last) + ")";
    out += " ---\n";
    out += region.old_text.empty() ? "(absent)\n" : region.old_text;
    out += "--- after the fix";
    if (region.new_first)
        out += " (lines " + std::to_string(region.new_first) + "-"
            + std::to_string(region.new_last) + ")";
    out += " ---\n";
    out += region.new_text.empty() ? "(absent)\n" : region.new_text;
    return out;
}

bool is_gateway_failure(const Error& e)
{
    return dynamic_cast<const ProviderError*>(&e) != nullptr
        || dynamic_cast<const CassetteMiss*>(&e) != nullptr
        || dynamic_cast<const ResponderUnset*>(&e) != nullptr;
}

} // namespace

Pipeline::Pipeline(Gateway& gateway, PipelineOptions options)
    : m_gateway(gateway)
    , m_options(options)
{
}

namespace {

// One chat exchange with a single reformat retry on unparseable output.
std::optional<FencedFields> ask(Gateway& gateway, const PipelineOptions& options,
                                const std::string& tag,
                                const std::map<std::string, std::string>& vars,
                                std::vector<std::string>& diagnostics)
{
    ChatRequest request;
    request.system = system_prompt();
    request.user = render_prompt(prompt_template(tag), vars);
    request.temperature = options.temperature;
    request.max_output_tokens = options.max_output_tokens;
    request.tag = tag;

    ChatResponse response = gateway.complete(request);
    if (auto fields = parse_fenced_fields(response.text))
        return fields;

    diagnostics.push_back(tag + ": unparseable reply, retrying once with a reformat instruction");
    request.user += "\n\nYour previous reply could not be parsed. Reply again and put your "
                    "answer in a single ``` fenced block containing only KEY: value lines.";
    response = gateway.complete(request);
    if (auto fields = parse_fenced_fields(response.text))
        return fields;
    diagnostics.push_back(tag + ": reply unparseable after retry");
    return std::nullopt;
}

} // namespace

RootCauseAnalysis Pipeline::prepare(Repo& repo, const CommitId& fix,
                                    std::vector<std::string>& diagnostics)
{
    CommitMeta meta = repo.meta(fix);
    std::vector<FilePatch> patches = repo.diff_patches(fix);
    std::vector<ChangedFile> changed = repo.changed_files(fix);

    RootCauseAnalysis analysis;

    auto summary_fields = ask(m_gateway, m_options, "summarize",
                              { { "message", meta.message }, { "patch", render(patches) } },
                              diagnostics);
    if (summary_fields) {
        if (auto s = summary_fields->first("SUMMARY"))
            analysis.modification_summary = *s;
    }

    std::set<std::string> reported;
    for (int run = 0; run < std::max(1, m_options.prepare_runs); ++run) {
        std::vector<FilePatch> shuffled = patches;
        deterministic_shuffle(shuffled,
                              derive_seed(m_options, fix, "prepare:" + std::to_string(run)));
        auto fields = ask(m_gateway, m_options, "root_cause",
                          { { "message", meta.message },
                            { "summary", analysis.modification_summary },
                            { "patch", render(shuffled) } },
                          diagnostics);
        if (!fields) {
            diagnostics.push_back("prepare: run " + std::to_string(run + 1)
                                  + " produced no usable output");
            continue;
        }
        if (analysis.root_cause.empty()) {
            if (auto rc = fields->first("ROOT_CAUSE"))
                analysis.root_cause = *rc;
        }
        for (const std::string& name : fields->numbered("FILE"))
            reported.insert(clean_reported_name(name));
    }

    std::set<std::string> relevant;
    for (const ChangedFile& file : changed) {
        const std::string& path = effective_path(file);
        for (const std::string& name : reported) {
            if (path_suffix_match(path, name)) {
                relevant.insert(path);
                break;
            }
        }
    }
    if (relevant.empty())
        for (const ChangedFile& file : changed)
            relevant.insert(effective_path(file));

    analysis.relevant_files.assign(relevant.begin(), relevant.end());
    std::string listed;
    for (const std::string& p : analysis.relevant_files)
        listed += (listed.empty() ? "" : ", ") + p;
    diagnostics.push_back("prepare: relevant files = " + (listed.empty() ? "(none)" : listed));
    return analysis;
}

Hint Pipeline::generate_hint(Repo& repo, const CommitId& fix, const RootCauseAnalysis& analysis,
                             std::vector<std::string>& diagnostics)
{
    CommitMeta meta = repo.meta(fix);
    CommitId parent = meta.parents.at(0);
    std::vector<ChangedFile> changed = repo.changed_files(fix);

    Hint hint;
    std::set<std::pair<std::string, std::string>> seen_buggy, seen_fixing;

    for (const std::string& path : analysis.relevant_files) {
        const ChangedFile* entry = nullptr;
        for (const ChangedFile& file : changed)
            if (effective_path(file) == path) {
                entry = &file;
                break;
            }
        if (!entry)
            continue;

        std::string old_path = entry->kind == ChangeKind::Added ? "" : entry->old_path;
        std::string new_path = entry->kind == ChangeKind::Deleted ? "" : entry->new_path;

        ExpandedContext context;
        try {
            context = expand_context(repo, fix, path, m_options.language,
                                     m_options.window_lines);
        } catch (const BinaryFile&) {
            diagnostics.push_back("hint: " + path + " is binary, skipped");
            continue;
        }
        if (context.regions.empty())
            continue;

        std::vector<std::string> rendered;
        rendered.reserve(context.regions.size());
        for (std::size_t i = 0; i < context.regions.size(); ++i)
            rendered.push_back(region_text(context.regions[i], i + 1));

        std::vector<std::string> chunks;
        std::string current;
        for (const std::string& piece : rendered) {
            if (!current.empty() && current.size() + piece.size() > m_options.hint_chunk_bytes) {
                chunks.push_back(current);
                current.clear();
            }
            current += piece;
        }
        if (!current.empty())
            chunks.push_back(current);
        if (chunks.size() > 1)
            diagnostics.push_back("hint: " + path + " context split into "
                                  + std::to_string(chunks.size()) + " chunks");

        std::optional<FileVersion> old_version
            = old_path.empty() ? std::nullopt : repo.file_at(parent, old_path);
        std::optional<FileVersion> new_version
            = new_path.empty() ? std::nullopt : repo.file_at(fix, new_path);

        for (const std::string& chunk : chunks) {
            auto fields = ask(m_gateway, m_options, "hint",
                              { { "path", path },
                                { "message", meta.message },
                                { "root_cause", analysis.root_cause },
                                { "context", chunk } },
                              diagnostics);
            if (!fields)
                continue;

            auto add_statements = [&](const char* key, const char* reason_key, bool buggy) {
                std::vector<std::string> texts = fields->numbered(key);
                std::vector<std::string> reasons = fields->numbered(reason_key);
                for (std::size_t i = 0; i < texts.size(); ++i) {
                    HintStatement statement;
                    statement.text = texts[i];
                    statement.reason = i < reasons.size() ? reasons[i] : "";
                    const std::optional<FileVersion>& version = buggy ? old_version : new_version;
                    statement.path = buggy ? old_path : new_path;
                    if (version)
                        statement.lines = resolve_statement(version->lines, statement.text);
                    if (statement.lines.empty()) {
                        diagnostics.push_back(std::string("hint: dropped unresolvable ")
                                              + (buggy ? "buggy" : "fixing") + " statement '"
                                              + statement.text + "' (" + path + ")");
                        continue;
                    }
                    auto& seen = buggy ? seen_buggy : seen_fixing;
                    if (!seen.emplace(statement.path, statement.text).second)
                        continue;
                    (buggy ? hint.buggy_statements : hint.fixing_statements)
                        .push_back(std::move(statement));
                }
            };
            add_statements("BUGGY", "BUGGY_REASON", true);
            add_statements("FIXING", "FIXING_REASON", false);
        }
    }

    diagnostics.push_back("hint: " + std::to_string(hint.buggy_statements.size())
                          + " buggy and " + std::to_string(hint.fixing_statements.size())
                          + " fixing statements resolved");
    return hint;
}

bool Pipeline::ability_check(Repo& repo, const CommitId& fix, const RootCauseAnalysis& analysis,
                             const Hint& hint, std::vector<std::string>& diagnostics)
{
    if (hint.buggy_statements.empty()) {
        diagnostics.push_back("ability: no resolvable buggy statements, failed");
        return false;
    }
    CommitMeta meta = repo.meta(fix);
    CommitId parent = meta.parents.at(0);

    std::map<std::string, std::set<std::size_t>> lines_by_path;
    for (const HintStatement& statement : hint.buggy_statements)
        for (std::size_t line : statement.lines)
            lines_by_path[statement.path].insert(line);

    std::vector<ChangedFile> changed = repo.changed_files(fix);
    std::string before_text, after_text;
    for (const auto& [path, line_set] : lines_by_path) {
        std::string path_fixed = path;
        for (const ChangedFile& file : changed)
            if (file.kind == ChangeKind::Renamed && file.old_path == path) {
                path_fixed = file.new_path;
                break;
            }
        std::vector<std::size_t> lines(line_set.begin(), line_set.end());
        auto [buggy_slice, fixed_slice] = refine_context(repo, parent, fix, path, lines,
                                                         m_options.initial_margin, path_fixed);
        before_text += "File: " + path + "\n" + buggy_slice.text + "\n";
        after_text += "File: " + path_fixed + "\n"
            + (fixed_slice.empty() ? std::string("(file absent in this version)\n")
                                   : fixed_slice.text)
            + "\n";
    }

    SplitMix64 rng(derive_seed(m_options, fix, "ability"));
    bool before_is_version1 = (rng.next() & 1) == 0;
    diagnostics.push_back(std::string("ability: version-1 = ")
                          + (before_is_version1 ? "pre-fix" : "post-fix"));

    std::optional<FencedFields> fields;
    try {
        fields = ask(m_gateway, m_options, "ability",
                     { { "root_cause", analysis.root_cause },
                       { "hint", render_hint_text(hint) },
                       { "version1", before_is_version1 ? before_text : after_text },
                       { "version2", before_is_version1 ? after_text : before_text } },
                     diagnostics);
    } catch (const Error& e) {
        if (!is_gateway_failure(e))
            throw;
        diagnostics.push_back(std::string("ability: gateway failure, failed (") + e.what()
                              + ")");
        return false;
    }
    if (!fields) {
        diagnostics.push_back("ability: failed (unparseable)");
        return false;
    }
    std::string v1 = lower(std::string(strip(fields->first("VERSION1").value_or(""))));
    std::string v2 = lower(std::string(strip(fields->first("VERSION2").value_or(""))));
    std::string before_label = before_is_version1 ? v1 : v2;
    std::string after_label = before_is_version1 ? v2 : v1;
    bool passed = before_label == "buggy" && after_label == "clean";
    diagnostics.push_back(passed ? "ability: passed" : "ability: failed");
    return passed;
}

namespace {

enum class Assessment { Buggy, Clean, Undeterminable };

Assessment assess_context(Gateway& gateway, const PipelineOptions& options,
                          const RootCauseAnalysis& analysis, const Hint& hint,
                          const std::string& context, std::vector<std::string>& diagnostics)
{
    auto contains = ask(gateway, options, "containment",
                        { { "statements", render_statement_list(hint) },
                          { "context", context } },
                        diagnostics);
    if (!contains)
        return Assessment::Undeterminable;
    std::string answer = lower(std::string(strip(contains->first("CONTAINS").value_or(""))));
    if (answer == "no")
        return Assessment::Clean;
    if (answer != "yes")
        return Assessment::Undeterminable;

    auto verdict = ask(gateway, options, "verdict",
                       { { "root_cause", analysis.root_cause },
                         { "hint", render_hint_text(hint) },
                         { "context", context } },
                       diagnostics);
    if (!verdict)
        return Assessment::Undeterminable;
    std::string value = lower(std::string(strip(verdict->first("VERDICT").value_or(""))));
    if (value == "buggy")
        return Assessment::Buggy;
    if (value == "clean")
        return Assessment::Clean;
    return Assessment::Undeterminable;
}

const char* assessment_name(Assessment a)
{
    switch (a) {
    case Assessment::Buggy:
        return "buggy";
    case Assessment::Clean:
        return "clean";
    default:
        return "undeterminable";
    }
}

} // namespace

ContextScan Pipeline::context_enhanced_identify(Repo& repo, const CommitId& fix,
                                                const RootCauseAnalysis& analysis,
                                                const Hint& hint,
                                                std::vector<std::string>& diagnostics)
{
    CommitMeta meta = repo.meta(fix);
    CommitId parent = meta.parents.at(0);

    // Trace every resolved buggy line to its origin, grouped per origin
    // commit and per path-at-origin.
    std::map<CommitId, std::map<std::string, std::set<std::size_t>>> origins;
    for (const HintStatement& statement : hint.buggy_statements)
        for (std::size_t line : statement.lines) {
            LineOrigin origin = repo.trace_line(parent, statement.path, line);
            origins[origin.commit][origin.path].insert(origin.line);
        }

    ContextScan scan;
    for (const auto& [commit, by_path] : origins) {
        Candidate candidate;
        candidate.id = commit;
        for (const auto& [path, lines] : by_path)
            candidate.traced_lines += lines.size();
        candidate.committer_time = repo.meta(commit).committer_time;
        scan.candidates.push_back(candidate);
    }
    std::sort(scan.candidates.begin(), scan.candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                  if (a.committer_time != b.committer_time)
                      return a.committer_time > b.committer_time;
                  return b.id < a.id;
              });
    diagnostics.push_back("candidates: " + std::to_string(scan.candidates.size()));
    if (scan.candidates.size() > m_options.candidate_cap) {
        diagnostics.push_back("candidates exceed cap of "
                              + std::to_string(m_options.candidate_cap)
                              + ", falling back to rank-based identification");
        return scan;
    }

    for (const Candidate& candidate : scan.candidates) {
        CommitMeta cmeta = repo.meta(candidate.id);
        bool has_parent = !cmeta.is_root();
        CommitId cparent = has_parent ? cmeta.parents[0] : candidate.id;

        std::string self_text, parent_text;
        for (const auto& [path, line_set] : origins.at(candidate.id)) {
            std::string path_fixed = has_parent ? path_at_parent(repo, candidate.id, path) : "";
            std::vector<std::size_t> lines(line_set.begin(), line_set.end());
            auto [self_slice, parent_slice]
                = refine_context(repo, candidate.id, cparent, path, lines,
                                 m_options.initial_margin,
                                 path_fixed.empty() ? path : path_fixed);
            self_text += "File: " + path + "\n" + self_slice.text + "\n";
            if (has_parent && !path_fixed.empty() && !parent_slice.empty())
                parent_text += "File: " + path_fixed + "\n" + parent_slice.text + "\n";
        }

        Assessment self = assess_context(m_gateway, m_options, analysis, hint, self_text,
                                         diagnostics);
        if (self != Assessment::Buggy) {
            diagnostics.push_back("candidate " + candidate.id.short_hex() + ": "
                                  + assessment_name(self) + ", continue");
            continue;
        }
        if (parent_text.empty()) {
            diagnostics.push_back("candidate " + candidate.id.short_hex()
                                  + ": buggy with empty parent context, chosen");
            scan.chosen = candidate.id;
            return scan;
        }
        Assessment parent_assessment = assess_context(m_gateway, m_options, analysis, hint,
                                                      parent_text, diagnostics);
        if (parent_assessment == Assessment::Clean) {
            diagnostics.push_back("candidate " + candidate.id.short_hex()
                                  + ": buggy with clean parent, chosen");
            scan.chosen = candidate.id;
            return scan;
        }
        diagnostics.push_back("candidate " + candidate.id.short_hex() + ": buggy but parent "
                              + assessment_name(parent_assessment) + ", continue");
    }
    diagnostics.push_back("candidate scan exhausted without a buggy/clean pair");
    return scan;
}

std::vector<CommitId> Pipeline::rank_based_identify(Repo& repo, const CommitId& fix,
                                                    const RootCauseAnalysis& analysis,
                                                    std::size_t top_n,
                                                    std::vector<std::string>& diagnostics)
{
    try {
        CommitMeta meta = repo.meta(fix);
        CommitId parent = meta.parents.at(0);
        std::vector<FilePatch> patches = repo.diff_patches(fix);
        std::vector<ChangedFile> changed = repo.changed_files(fix);

        struct PoolEntry {
            std::string path;     // effective path at fix
            std::string old_path; // path at fix^1, "" when the fix added the file
            std::string text;
        };
        std::vector<PoolEntry> pool;

        for (const std::string& path : analysis.relevant_files) {
            const ChangedFile* entry = nullptr;
            for (const ChangedFile& file : changed)
                if (effective_path(file) == path) {
                    entry = &file;
                    break;
                }
            if (!entry)
                continue;
            const FilePatch* file_patch = nullptr;
            for (const FilePatch& p : patches) {
                const std::string& eff = p.new_path.empty() ? p.old_path : p.new_path;
                if (eff == path) {
                    file_patch = &p;
                    break;
                }
            }
            if (!file_patch || file_patch->is_binary)
                continue;

            auto fields = ask(m_gateway, m_options, "statements",
                              { { "path", path },
                                { "message", meta.message },
                                { "root_cause", analysis.root_cause },
                                { "patch", render({ *file_patch }) } },
                              diagnostics);
            if (!fields) {
                diagnostics.push_back("rank: no statements for " + path);
                continue;
            }
            std::string old_path = entry->kind == ChangeKind::Added ? "" : entry->old_path;
            for (const std::string& text : fields->numbered("STATEMENT"))
                pool.push_back({ path, old_path, text });
        }

        if (pool.empty()) {
            diagnostics.push_back("rank: no statements produced");
            return {};
        }

        std::vector<std::size_t> order(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i)
            order[i] = i;

        std::string listed;
        for (std::size_t i = 0; i < pool.size(); ++i)
            listed += std::to_string(i + 1) + ". [" + pool[i].path + "] " + pool[i].text + "\n";
        auto rank_fields = ask(m_gateway, m_options, "rank",
                               { { "root_cause", analysis.root_cause },
                                 { "statements", listed } },
                               diagnostics);
        bool ranked = false;
        if (rank_fields) {
            if (auto order_field = rank_fields->first("ORDER")) {
                std::vector<std::size_t> parsed;
                std::set<std::size_t> seen;
                std::string token;
                std::string source = *order_field + ",";
                for (char c : source) {
                    if (c == ',') {
                        std::string t = std::string(strip(token));
                        token.clear();
                        if (t.empty())
                            continue;
                        std::size_t value = 0;
                        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
                        if (ec != std::errc() || p != t.data() + t.size())
                            continue;
                        if (value < 1 || value > pool.size() || !seen.insert(value - 1).second)
                            continue;
                        parsed.push_back(value - 1);
                    } else {
                        token.push_back(c);
                    }
                }
                if (!parsed.empty()) {
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        if (!seen.count(i))
                            parsed.push_back(i);
                    order = std::move(parsed);
                    ranked = true;
                }
            }
        }
        if (!ranked)
            diagnostics.push_back("rank: no usable ranking, keeping statement order");

        std::map<std::string, std::size_t> taken;
        std::map<CommitId, std::int64_t> traced;
        for (std::size_t index : order) {
            const PoolEntry& entry = pool[index];
            if (entry.old_path.empty())
                continue;
            if (taken[entry.path] >= top_n)
                continue;
            std::optional<FileVersion> version = repo.file_at(parent, entry.old_path);
            if (!version)
                continue;
            std::vector<std::size_t> lines = resolve_statement(version->lines, entry.text);
            if (lines.empty()) {
                diagnostics.push_back("rank: statement '" + entry.text
                                      + "' does not resolve at the pre-fix version");
                continue;
            }
            ++taken[entry.path];
            for (std::size_t line : lines) {
                LineOrigin origin = repo.trace_line(parent, entry.old_path, line);
                traced.emplace(origin.commit, repo.meta(origin.commit).committer_time);
            }
        }

        if (traced.empty()) {
            diagnostics.push_back("rank: nothing traceable");
            return {};
        }
        auto best = traced.begin();
        for (auto it = std::next(traced.begin()); it != traced.end(); ++it)
            if (it->second > best->second)
                best = it; // map order = id ascending, so ties keep the smallest id
        diagnostics.push_back("rank: most recent traced commit " + best->first.short_hex());
        return { best->first };
    } catch (const Error& e) {
        if (!is_gateway_failure(e))
            throw;
        diagnostics.push_back(std::string("rank: gateway failure (") + e.what() + ")");
        return {};
    }
}

Prediction Pipeline::run(Repo& repo, const CommitId& fix)
{
    UsageLedger::Snapshot before = m_gateway.ledger().snapshot();
    Prediction prediction;
    prediction.fix = fix;
    prediction.route = "empty";

    try {
        CommitMeta meta = repo.meta(fix);
        if (meta.is_root()) {
            prediction.diagnostics.push_back("fix is a root commit, nothing to trace");
        } else {
            RootCauseAnalysis analysis = prepare(repo, fix, prediction.diagnostics);
            prediction.root_cause = analysis.root_cause;
            Hint hint = generate_hint(repo, fix, analysis, prediction.diagnostics);

            bool try_rank = true;
            if (!hint.buggy_statements.empty()
                && ability_check(repo, fix, analysis, hint, prediction.diagnostics)) {
                ContextScan scan
                    = context_enhanced_identify(repo, fix, analysis, hint,
                                                prediction.diagnostics);
                prediction.candidates = scan.candidates;
                if (scan.chosen) {
                    prediction.route = "context_enhanced";
                    prediction.predicted = { *scan.chosen };
                    try_rank = false;
                }
            } else if (hint.buggy_statements.empty()) {
                prediction.diagnostics.push_back(
                    "no resolvable buggy statements, using rank-based identification");
            }

            if (try_rank) {
                std::vector<CommitId> picked = rank_based_identify(
                    repo, fix, analysis, m_options.top_n, prediction.diagnostics);
                if (!picked.empty()) {
                    prediction.route = "rank_based";
                    prediction.predicted = picked;
                }
            }
        }
    } catch (const Error& e) {
        // Repo and content problems degrade to an empty prediction; provider
        // problems outside the ability/rank fallbacks stay fatal so callers
        // can distinguish "nothing found" from "the gateway is broken".
        if (is_gateway_failure(e))
            throw;
        prediction.route = "empty";
        prediction.predicted.clear();
        prediction.diagnostics.push_back(std::string("error: ") + e.what());
    }

    std::sort(prediction.predicted.begin(), prediction.predicted.end());
    UsageLedger::Snapshot after = m_gateway.ledger().snapshot();
    prediction.usage.llm_calls = after.llm_calls - before.llm_calls;
    prediction.usage.tokens_total = after.tokens_total - before.tokens_total;
    prediction.usage.wall_ms = after.wall_ms - before.wall_ms;
    return prediction;
}

std::string prediction_to_json(const Prediction& prediction)
{
    nlohmann::ordered_json j;
    j["fix"] = prediction.fix.hex();
    j["predicted"] = nlohmann::ordered_json::array();
    for (const CommitId& id : prediction.predicted)
        j["predicted"].push_back(id.hex());
    j["route"] = prediction.route;
    if (!prediction.algorithm.empty())
        j["algorithm"] = prediction.algorithm;
    j["root_cause"] = prediction.root_cause;
    j["candidates"] = nlohmann::ordered_json::array();
    for (const Candidate& candidate : prediction.candidates)
        j["candidates"].push_back(candidate.id.hex());
    j["llm_calls"] = prediction.usage.llm_calls;
    j["tokens_total"] = prediction.usage.tokens_total;
    j["wall_ms"] = prediction.usage.wall_ms;
    j["diagnostics"] = nlohmann::ordered_json::array();
    for (const std::string& d : prediction.diagnostics)
        j["diagnostics"].push_back(d);
    return j.dump(2);
}

} // namespace szzkit
