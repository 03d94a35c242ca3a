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

#include "szzkit/spans.hpp"

#include <unordered_set>

namespace szzkit {

namespace {

const std::unordered_set<std::string>& control_keywords()
{
    // Identifiers that can precede "(...)" followed by "{" without being a
    // function name, in C or Java.
    static const std::unordered_set<std::string> keywords = {
        "if", "for", "while", "switch", "do", "else", "return", "sizeof",
        "catch", "try", "synchronized", "assert", "throw", "new", "case",
    };
    return keywords;
}

bool ident_char(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')
        || c == '_' || c == '$';
}

class SpanScanner {
public:
    SpanScanner(const std::vector<std::string>& lines, Language language)
        : m_lines(lines)
        , m_language(language)
    {
    }

    std::vector<FunctionSpan> scan()
    {
        for (std::size_t row = 0; row < m_lines.size(); ++row) {
            m_line_no = row + 1;
            scan_line(m_lines[row]);
            if (m_failed)
                return {};
        }
        if (m_in_block_comment || m_brace_depth != 0 || m_fn_open)
            return {}; // unbalanced input: callers fall back to windows
        return std::move(m_spans);
    }

private:
    void note_statement_char()
    {
        if (m_stmt_line == 0)
            m_stmt_line = m_line_no;
    }

    void handle_ident(const std::string& ident)
    {
        note_statement_char();
        m_last_ident = ident;
        m_last_was_ident = true;
    }

    void open_brace()
    {
        if (!m_fn_open && m_pending_fn && !m_suppress_fn) {
            m_fn_open = true;
            m_fn_depth = m_brace_depth;
            m_fn_name = m_pending_name;
            m_fn_start = m_pending_start;
        }
        ++m_brace_depth;
        m_pending_fn = false;
        m_suppress_fn = false;
        m_stmt_line = 0;
    }

    void close_brace()
    {
        if (m_brace_depth == 0) {
            m_failed = true;
            return;
        }
        --m_brace_depth;
        if (m_fn_open && m_brace_depth == m_fn_depth) {
            m_spans.push_back({ m_fn_name, m_fn_start, m_line_no });
            m_fn_open = false;
        }
        m_pending_fn = false;
        m_suppress_fn = false;
        m_stmt_line = 0;
    }

    void scan_line(const std::string& line)
    {
        std::size_t i = 0;
        const std::size_t n = line.size();

        if (m_in_block_comment) {
            auto close = line.find("*/");
            if (close == std::string::npos)
                return;
            i = close + 2;
            m_in_block_comment = false;
        }
        if (m_in_preprocessor) {
            m_in_preprocessor = !line.empty() && line.back() == '\\';
            return;
        }

        while (i < n) {
            char c = line[i];

            if (c == ' ' || c == '\t') {
                ++i;
                continue;
            }
            if (c == '/' && i + 1 < n && line[i + 1] == '/')
                return;
            if (c == '/' && i + 1 < n && line[i + 1] == '*') {
                auto close = line.find("*/", i + 2);
                if (close == std::string::npos) {
                    m_in_block_comment = true;
                    return;
                }
                i = close + 2;
                continue;
            }
            if (m_language == Language::C && c == '#' && statement_blank()) {
                m_in_preprocessor = !line.empty() && line.back() == '\\';
                return;
            }
            if (c == '"' || c == '\'') {
                note_statement_char();
                char quote = c;
                ++i;
                while (i < n) {
                    if (line[i] == '\\') {
                        i += 2;
                        continue;
                    }
                    if (line[i] == quote) {
                        ++i;
                        break;
                    }
                    ++i;
                }
                m_last_was_ident = false;
                continue;
            }
            if (ident_char(c)) {
                std::size_t start = i;
                while (i < n && ident_char(line[i]))
                    ++i;
                handle_ident(line.substr(start, i - start));
                continue;
            }

            note_statement_char();
            switch (c) {
            case '(':
                if (m_paren_depth == 0 && m_brace_depth <= body_depth_limit()
                    && !m_fn_open && m_last_was_ident && !m_last_ident.empty()
                    && control_keywords().count(m_last_ident) == 0) {
                    m_pending_fn = true;
                    m_pending_name = m_last_ident;
                    m_pending_start = m_stmt_line ? m_stmt_line : m_line_no;
                } else if (m_paren_depth == 0) {
                    m_pending_fn = false;
                }
                ++m_paren_depth;
                break;
            case ')':
                if (m_paren_depth > 0)
                    --m_paren_depth;
                break;
            case '{':
                if (m_paren_depth == 0)
                    open_brace();
                break;
            case '}':
                if (m_paren_depth == 0) {
                    close_brace();
                    if (m_failed)
                        return;
                }
                break;
            case ';':
                if (m_paren_depth == 0) {
                    m_pending_fn = false;
                    m_suppress_fn = false;
                    m_stmt_line = 0;
                }
                break;
            case '=':
                // "... = {initializer}" and "x = foo() { ... }" are not
                // definitions; but "==" / "!=" / "<=" / ">=" are harmless.
                if (m_paren_depth == 0 && (i + 1 >= n || line[i + 1] != '=')
                    && (i == 0 || (line[i - 1] != '=' && line[i - 1] != '!'
                                   && line[i - 1] != '<' && line[i - 1] != '>'))) {
                    m_pending_fn = false;
                    m_suppress_fn = true;
                }
                break;
            default:
                break;
            }
            m_last_was_ident = false;
            ++i;
        }
    }

    bool statement_blank() const { return m_stmt_line == 0; }

    // C functions live at brace depth 0; Java methods sit inside (possibly
    // nested) class bodies, so allow a few container levels.
    std::size_t body_depth_limit() const { return m_language == Language::C ? 0 : 3; }

    const std::vector<std::string>& m_lines;
    Language m_language;
    std::vector<FunctionSpan> m_spans;

    std::size_t m_line_no = 0;
    std::size_t m_brace_depth = 0;
    std::size_t m_paren_depth = 0;
    std::size_t m_stmt_line = 0;
    std::string m_last_ident;
    bool m_last_was_ident = false;

    bool m_pending_fn = false;
    std::string m_pending_name;
    std::size_t m_pending_start = 0;
    bool m_suppress_fn = false;

    bool m_fn_open = false;
    std::size_t m_fn_depth = 0;
    std::string m_fn_name;
    std::size_t m_fn_start = 0;

    bool m_in_block_comment = false;
    bool m_in_preprocessor = false;
    bool m_failed = false;
};

} // namespace

std::vector<FunctionSpan> extract_function_spans(const std::vector<std::string>& lines,
                                                 Language language)
{
    return SpanScanner(lines, language).scan();
}

} // namespace szzkit
