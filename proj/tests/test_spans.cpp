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

#include "szzkit/spans.hpp"

using namespace szzkit;

TEST_CASE("extract_function_spans finds C functions with correct extents")
{
    std::vector<std::string> lines {
        "#include <stdio.h>",               // 1
        "",                                 // 2
        "static int helper(int x)",         // 3
        "{",                                // 4
        "    if (x > 0) {",                 // 5
        "        return x;",                // 6
        "    }",                            // 7
        "    return -x;",                   // 8
        "}",                                // 9
        "",                                 // 10
        "int main(void) {",                 // 11
        "    printf(\"{\\n\");",            // 12
        "    return helper(2); /* } */",    // 13
        "}",                                // 14
    };
    auto spans = extract_function_spans(lines, Language::C);
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].name == "helper");
    CHECK(spans[0].start_line == 3);
    CHECK(spans[0].end_line == 9);
    CHECK(spans[1].name == "main");
    CHECK(spans[1].start_line == 11);
    CHECK(spans[1].end_line == 14);
}

TEST_CASE("span start covers a multi-line signature")
{
    std::vector<std::string> lines {
        "static long",       // 1
        "accumulate(long a,", // 2
        "           long b)", // 3
        "{",                  // 4
        "    return a + b;",  // 5
        "}",                  // 6
    };
    auto spans = extract_function_spans(lines, Language::C);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].name == "accumulate");
    CHECK(spans[0].start_line == 1);
    CHECK(spans[0].end_line == 6);
}

TEST_CASE("initializers, control flow, and preprocessor lines produce no spans")
{
    std::vector<std::string> lines {
        "int table[] = {1, 2, 3};",
        "#define OPEN {",
        "struct pair p = { .a = 1 };",
    };
    CHECK(extract_function_spans(lines, Language::C).empty());

    std::vector<std::string> control {
        "int f(void)",
        "{",
        "    while (running()) {",
        "        switch (mode) {",
        "        case 1:",
        "            break;",
        "        }",
        "    }",
        "    return 0;",
        "}",
    };
    auto spans = extract_function_spans(control, Language::C);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].name == "f");
    CHECK(spans[0].start_line == 1);
    CHECK(spans[0].end_line == 10);
}

TEST_CASE("Java methods inside class bodies are found")
{
    std::vector<std::string> lines {
        "public class Widget {",            // 1
        "    private int count;",           // 2
        "    public int bump(int by) {",    // 3
        "        if (by > 0) { count += by; }", // 4
        "        return count;",            // 5
        "    }",                            // 6
        "    static class Inner {",         // 7
        "        void reset() { }",         // 8
        "    }",                            // 9
        "}",                                // 10
    };
    auto spans = extract_function_spans(lines, Language::Java);
    REQUIRE(spans.size() == 2);
    CHECK(spans[0].name == "bump");
    CHECK(spans[0].start_line == 3);
    CHECK(spans[0].end_line == 6);
    CHECK(spans[1].name == "reset");
    CHECK(spans[1].start_line == 8);
    CHECK(spans[1].end_line == 8);

    // C mode keeps its top-level-only rule, so the same text yields nothing.
    CHECK(extract_function_spans(lines, Language::C).empty());
}

TEST_CASE("unbalanced braces make extraction report failure as empty")
{
    std::vector<std::string> unclosed { "void f() {", "    call();" };
    CHECK(extract_function_spans(unclosed, Language::C).empty());

    std::vector<std::string> stray { "}", "void f() { }" };
    CHECK(extract_function_spans(stray, Language::C).empty());

    std::vector<std::string> open_comment { "/* never closed", "void f() { }" };
    CHECK(extract_function_spans(open_comment, Language::C).empty());

    CHECK(extract_function_spans({}, Language::C).empty());
}

TEST_CASE("braces hidden in strings and comments do not confuse the scanner")
{
    std::vector<std::string> lines {
        "const char* s = \"} {\";",
        "// void fake() {",
        "/* void fake2() { */",
        "int real(void)",
        "{",
        "    char c = '}';",
        "    return 0;",
        "}",
    };
    auto spans = extract_function_spans(lines, Language::C);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].name == "real");
    CHECK(spans[0].start_line == 4);
    CHECK(spans[0].end_line == 8);
}
