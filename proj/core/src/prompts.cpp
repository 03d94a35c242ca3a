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

#include "szzkit/prompts.hpp"

#include "szzkit/errors.hpp"
#include "szzkit/prompts_data.hpp"

namespace szzkit {

const std::string& system_prompt()
{
    static const std::string text
        = "You are an expert software engineer analyzing version-control history to find the "
          "commit that introduced a bug. Answer precisely. When a response format is given, "
          "put your answer in a ``` fenced block containing only KEY: value lines.";
    return text;
}

const std::string& prompt_template(const std::string& tag)
{
    static const std::map<std::string, std::string> templates = [] {
        std::map<std::string, std::string> m;
        for (const auto& entry : detail::k_prompt_templates)
            m.emplace(entry.tag, entry.text);
        return m;
    }();
    auto it = templates.find(tag);
    if (it == templates.end())
        throw Error("unknown prompt tag: " + tag);
    return it->second;
}

std::string render_prompt(const std::string& tmpl, const std::map<std::string, std::string>& vars)
{
    std::string out;
    out.reserve(tmpl.size());
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        auto open = tmpl.find("{{", pos);
        if (open == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        out.append(tmpl, pos, open - pos);
        auto close = tmpl.find("}}", open + 2);
        if (close == std::string::npos)
            throw Error("unterminated placeholder in prompt template");
        std::string name = tmpl.substr(open + 2, close - open - 2);
        auto it = vars.find(name);
        if (it == vars.end())
            throw Error("prompt placeholder has no value: " + name);
        out += it->second;
        pos = close + 2;
    }
    return out;
}

} // namespace szzkit
