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

#include <doctest.h>

#include "szzkit/fenced.hpp"

using namespace szzkit;

TEST_CASE("extract_fenced_block returns the first closed block")
{
    CHECK(extract_fenced_block("prose\n```\na\nb\n```\ntail\n") == "a\nb\n");
    CHECK(extract_fenced_block("```\nonly\n```\n") == "only\n");
    CHECK(extract_fenced_block("```text\nbody\n```\n") == "body\n");
    CHECK(extract_fenced_block("```\nfirst\n```\n```\nsecond\n```\n") == "first\n");
    CHECK(extract_fenced_block("  ```\nindented fence\n  ```\n") == "indented fence\n");
    CHECK(extract_fenced_block("```\n```\n") == "");
}

TEST_CASE("extract_fenced_block rejects missing or unclosed fences")
{
    CHECK_FALSE(extract_fenced_block("no fence at all").has_value());
    CHECK_FALSE(extract_fenced_block("```\nnever closed\n").has_value());
    CHECK_FALSE(extract_fenced_block("").has_value());
}

TEST_CASE("parse_fenced_fields reads KEY: value lines in order")
{
    auto fields = parse_fenced_fields("reply:\n"
                                      "```\n"
                                      "SUMMARY: fixes the lock\n"
                                      "some prose without a key\n"
                                      "FILE_1: a.c\n"
                                      "FILE_2: b.c\n"
                                      "lowercase: ignored\n"
                                      "BAD KEY: ignored too\n"
                                      "EMPTY:\n"
                                      "```\n");
    REQUIRE(fields.has_value());
    REQUIRE(fields->entries.size() == 4);
    CHECK(fields->entries[0].first == "SUMMARY");
    CHECK(fields->entries[0].second == "fixes the lock");
    CHECK(fields->first("SUMMARY") == "fixes the lock");
    CHECK(fields->first("FILE_1") == "a.c");
    CHECK(fields->first("EMPTY") == "");
    CHECK_FALSE(fields->first("MISSING").has_value());
}

TEST_CASE("parse_fenced_fields keeps repeated keys and colons in values")
{
    auto fields = parse_fenced_fields("```\n"
                                      "NOTE: first\n"
                                      "NOTE: second\n"
                                      "PATH: a:b:c\n"
                                      "```\n");
    REQUIRE(fields.has_value());
    CHECK(fields->entries.size() == 3);
    CHECK(fields->first("NOTE") == "first");
    CHECK(fields->first("PATH") == "a:b:c");
}

TEST_CASE("numbered stops at the first missing index")
{
    auto fields = parse_fenced_fields("```\n"
                                      "ITEM_1: one\n"
                                      "ITEM_2: two\n"
                                      "ITEM_4: skipped\n"
                                      "OTHER_1: x\n"
                                      "```\n");
    REQUIRE(fields.has_value());
    CHECK(fields->numbered("ITEM") == std::vector<std::string> { "one", "two" });
    CHECK(fields->numbered("OTHER") == std::vector<std::string> { "x" });
    CHECK(fields->numbered("NONE").empty());
}

TEST_CASE("parse_fenced_fields fails without a block or fields")
{
    CHECK_FALSE(parse_fenced_fields("KEY: but no fence\n").has_value());
    CHECK_FALSE(parse_fenced_fields("```\nno fields here\n```\n").has_value());
    CHECK_FALSE(parse_fenced_fields("```\nunclosed\nKEY: x\n").has_value());
}
