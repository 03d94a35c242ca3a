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

#include "szzkit/dataset.hpp"

#include "szzkit/errors.hpp"
#include "szzkit/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>

namespace szzkit {

using nlohmann::json;

namespace {

bool is_hex_id(const std::string& s)
{
    if (s.size() < 7 || s.size() > 40)
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what)
{
    throw MisalignedDataset("dataset line " + std::to_string(line_no) + ": " + what);
}

} // namespace

std::vector<DatasetEntry> load_dataset(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MisalignedDataset("cannot open dataset: " + path);

    std::vector<DatasetEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty())
            continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& e) {
            fail(line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!doc.is_object())
            fail(line_no, "entry must be a JSON object");

        DatasetEntry entry;
        try {
            entry.repo_name = doc.at("repo").get<std::string>();
            entry.fix = doc.at("fix").get<std::string>();
            for (const auto& item : doc.at("inducing"))
                entry.inducing.push_back(item.get<std::string>());
            std::string language = doc.at("language").get<std::string>();
            if (language == "c")
                entry.language = Language::C;
            else if (language == "java")
                entry.language = Language::Java;
            else
                fail(line_no, "language must be \"c\" or \"java\", got \"" + language + "\"");
        } catch (const json::exception& e) {
            fail(line_no, std::string("missing or mistyped field: ") + e.what());
        }

        if (entry.repo_name.empty())
            fail(line_no, "repo must be non-empty");
        if (!is_hex_id(entry.fix))
            fail(line_no, "fix must be 7-40 lowercase hex digits");
        if (entry.inducing.empty())
            fail(line_no, "inducing must be non-empty");
        for (const std::string& id : entry.inducing) {
            if (!is_hex_id(id))
                fail(line_no, "inducing id must be 7-40 lowercase hex digits");
            if (id == entry.fix)
                fail(line_no, "fix listed among its own inducing commits");
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace szzkit
