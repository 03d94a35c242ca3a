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

#include "szzkit/noise.hpp"

using namespace szzkit;

TEST_CASE("classify_noise identifies blank lines")
{
    for (Language lang : { Language::C, Language::Java }) {
        CHECK(classify_noise("", lang) == NoiseClass::Blank);
        CHECK(classify_noise("   ", lang) == NoiseClass::Blank);
        CHECK(classify_noise("\t \t", lang) == NoiseClass::Blank);
    }
}

TEST_CASE("classify_noise identifies comment-only lines")
{
    for (Language lang : { Language::C, Language::Java }) {
        CHECK(classify_noise("// trailing note", lang) == NoiseClass::Comment);
        CHECK(classify_noise("   // indented", lang) == NoiseClass::Comment);
        CHECK(classify_noise("/* one-liner */", lang) == NoiseClass::Comment);
        CHECK(classify_noise("  /* spaced */  ", lang) == NoiseClass::Comment);
        CHECK(classify_noise(" * block continuation", lang) == NoiseClass::Comment);
        CHECK(classify_noise(" */", lang) == NoiseClass::Comment);
        // The classifier is stateless: a block opener without its closer on
        // the same line cannot be told apart from code and stays code.
        CHECK(classify_noise("/** doc opener", lang) == NoiseClass::Code);
    }
}

TEST_CASE("classify_noise keeps mixed lines as code")
{
    for (Language lang : { Language::C, Language::Java }) {
        CHECK(classify_noise("x = 1;", lang) == NoiseClass::Code);
        CHECK(classify_noise("x = 1; /* init */", lang) == NoiseClass::Code);
        CHECK(classify_noise("call(); // why", lang) == NoiseClass::Code);
        CHECK(classify_noise("/* lead */ call();", lang) == NoiseClass::Code);
        CHECK(classify_noise("int star = a * b;", lang) == NoiseClass::Code);
        CHECK(classify_noise("}", lang) == NoiseClass::Code);
    }
}

TEST_CASE("cosmetic_deleted_lines pairs whitespace-only rewrites")
{
    std::string diff = "--- a/f.c\n"
                       "+++ b/f.c\n"
                       "@@ -1,4 +1,4 @@\n"
                       "-int a = 1;\n"
                       "-\tint b = 2;\n"
                       "-removed for real\n"
                       " unchanged\n"
                       "+    int a = 1;\n"
                       "+int b = 2;  \n"
                       "+fresh line\n";
    auto patches = parse_unified(diff);
    REQUIRE(patches.size() == 1);
    auto cosmetic = cosmetic_deleted_lines(patches[0]);

    // Lines 1 and 2 reappear with only their indentation changed; line 3 has
    // no partner on the added side.
    CHECK(cosmetic.count(1) == 1);
    CHECK(cosmetic.count(2) == 1);
    CHECK(cosmetic.count(3) == 0);
    CHECK(cosmetic.size() == 2);
}

TEST_CASE("cosmetic pairing stays within one hunk")
{
    std::string diff = "--- a/f.c\n"
                       "+++ b/f.c\n"
                       "@@ -1,1 +1,1 @@\n"
                       "-alpha;\n"
                       "+beta;\n"
                       "@@ -10,1 +10,1 @@\n"
                       "-gamma;\n"
                       "+alpha;\n";
    auto patches = parse_unified(diff);
    REQUIRE(patches.size() == 1);
    // "alpha;" is deleted in hunk 1 and added in hunk 2: no pairing across.
    CHECK(cosmetic_deleted_lines(patches[0]).empty());
}

TEST_CASE("cosmetic_deleted_lines ignores binary and empty patches")
{
    FilePatch binary;
    binary.is_binary = true;
    CHECK(cosmetic_deleted_lines(binary).empty());
    CHECK(cosmetic_deleted_lines(FilePatch {}).empty());
}
