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

#include "support/figure_fixture.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace szzkit::testing {

std::unique_ptr<RepoBuilder> build_figure_history(const std::string& dir)
{
    auto builder = std::make_unique<RepoBuilder>(dir);
    const std::string path = "drivers/dev.c";

    std::vector<std::string> base_lines = {
        "#include \"dev.h\"",
        "",
        "static int dev_poll_interval = 10;",
        "",
        "int dev_flush(struct dev *dev)",
        "{",
        "    struct node *node, *tmp;",
        "    list_for_each_entry_safe(node, tmp, &dev->list, entry) {",
        "        dev_info(dev, node->flags);",
        "        node_clear(node);",
        "    }",
        "    return 0;",
        "}",
    };

    std::vector<std::string> tweak_lines = base_lines;
    tweak_lines[8] = "        dev_info(dev, node->status);";

    std::vector<std::string> fix_lines = {
        "#include \"dev.h\"",
        "",
        "static int dev_poll_interval = 20;",
        "",
        "int dev_flush(struct dev *dev)",
        "{",
        "    struct node *node, *tmp;",
        "    mutex_lock(&dev->lock);",
        "    list_for_each_entry_safe(node, tmp, &dev->list_locked, entry) {",
        "        dev_info_locked(dev, node->status);",
        "        node_clear(node);",
        "    }",
        "    mutex_unlock(&dev->lock);",
        "    return 0;",
        "}",
    };

    ModelCommit base;
    base.name = "base";
    base.message = "dev: add node list flushing";
    base.committer_time = 1600000000;
    base.files[path] = base_lines;
    builder->add(base);

    ModelCommit tweak;
    tweak.name = "tweak";
    tweak.parents = { "base" };
    tweak.message = "dev: report node status instead of flags";
    tweak.committer_time = 1600000600;
    tweak.files[path] = tweak_lines;
    builder->add(tweak);

    ModelCommit fix;
    fix.name = "fix";
    fix.parents = { "tweak" };
    fix.message = "dev: serialize node list traversal\n\n"
                  "Unlocked traversal raced with concurrent add and delete.";
    fix.committer_time = 1600001200;
    fix.files[path] = fix_lines;
    builder->add(fix);

    builder->finish();
    return builder;
}

namespace {

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

std::string fenced(const std::string& body)
{
    return "```\n" + body + "```\n";
}

} // namespace

std::string figure_reply(const std::string& user, bool ability_succeeds)
{
    if (contains(user, "Summarize what this commit changes"))
        return fenced("SUMMARY: The commit wraps the node list traversal in the device mutex "
                      "and renames the logging helper accordingly.\n");

    if (contains(user, "Identify the root cause of the bug"))
        return fenced("ROOT_CAUSE: The node list is traversed without holding the device "
                      "mutex, so concurrent add or delete corrupts the list.\n"
                      "FILE_1: drivers/dev.c\n");

    if (contains(user, "Identify the code statements that lead to the bug"))
        return fenced(
            "BUGGY_1: list_for_each_entry_safe(node, tmp, &dev->list, entry) {\n"
            "BUGGY_REASON_1: iterates the shared list without the device mutex\n"
            "BUGGY_2: dev_info(dev, node->status);\n"
            "BUGGY_REASON_2: touches nodes that a concurrent deletion may free\n"
            "FIXING_1: mutex_lock(&dev->lock);\n"
            "FIXING_REASON_1: serializes the traversal against add and delete\n");

    if (contains(user, "Decide for each version whether it is buggy or clean")) {
        if (!ability_succeeds)
            return fenced("VERSION1: buggy\nVERSION2: buggy\n");
        std::size_t v1 = user.find("Version-1:");
        std::size_t v2 = user.find("Version-2:");
        if (v1 == std::string::npos || v2 == std::string::npos)
            throw std::logic_error("ability prompt without version sections");
        bool v1_fixed = user.substr(v1, v2 - v1).find("dev_info_locked") != std::string::npos;
        return fenced(v1_fixed ? "VERSION1: clean\nVERSION2: buggy\n"
                               : "VERSION1: buggy\nVERSION2: clean\n");
    }

    if (contains(user, "Decide whether this code region contains the statements"))
        return fenced("CONTAINS: yes\n");

    if (contains(user, "Decide whether this historical version already contains the bug")) {
        // The hint section quotes the fixing statement, so only the code
        // region below the marker tells the versions apart.
        std::size_t region = user.find("Code region:");
        if (region == std::string::npos)
            throw std::logic_error("verdict prompt without a code region");
        bool fixed = contains(user.substr(region), "mutex_lock");
        return fenced(fixed ? "VERDICT: clean\nRATIONALE: the traversal runs under the "
                              "device mutex here\n"
                            : "VERDICT: buggy\nRATIONALE: the traversal is unlocked in "
                              "this version\n");
    }

    if (contains(user, "identify the code statements that led to the bug"))
        return fenced("STATEMENT_1: dev_info(dev, node->status);\n");

    if (contains(user, "Rank ALL candidate statements"))
        return fenced("ORDER: 1\n");

    throw std::logic_error("unrecognized prompt: " + user.substr(0, 80));
}

ScriptedResponder figure_responder(bool ability_succeeds)
{
    return [ability_succeeds](const ChatRequest& request) {
        return figure_reply(request.user, ability_succeeds);
    };
}

namespace {

class FigureTransport final : public Transport {
public:
    explicit FigureTransport(bool ability_succeeds)
        : m_ability_succeeds(ability_succeeds)
    {
    }

    Reply post(const std::string&, const std::string& body,
               const std::vector<std::pair<std::string, std::string>>&) override
    {
        nlohmann::json request = nlohmann::json::parse(body);
        std::string user = request.at("messages").back().at("content").get<std::string>();
        std::string text = figure_reply(user, m_ability_succeeds);
        nlohmann::json reply;
        reply["choices"] = { { { "message", { { "content", text } } } } };
        reply["usage"] = { { "prompt_tokens", static_cast<long>((user.size() + 3) / 4) },
                           { "completion_tokens", static_cast<long>((text.size() + 3) / 4) } };
        return { 200, reply.dump() };
    }

private:
    bool m_ability_succeeds;
};

} // namespace

std::shared_ptr<Transport> figure_transport(bool ability_succeeds)
{
    return std::make_shared<FigureTransport>(ability_succeeds);
}

} // namespace szzkit::testing
