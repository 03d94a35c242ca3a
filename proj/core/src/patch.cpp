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

#include "szzkit/patch.hpp"

#include <algorithm>
#include <charconv>
#include <string_view>

#include <nlohmann/json.hpp>

#include "szzkit/errors.hpp"
#include "szzkit/myers.hpp"

namespace szzkit {

namespace {

bool starts_with(std::string_view s, std::string_view prefix)
{
    return s.substr(0, prefix.size()) == prefix;
}

// Strips the git "a/" or "b/" prefix and a classic-diff "\ttimestamp"
// suffix; "/dev/null" becomes the empty path.
std::string clean_path(std::string_view raw)
{
    auto tab = raw.find('\t');
    if (tab != std::string_view::npos)
        raw = raw.substr(0, tab);
    if (raw == "/dev/null")
        return {};
    if (starts_with(raw, "a/") || starts_with(raw, "b/"))
        raw = raw.substr(2);
    return std::string(raw);
}

struct HeaderPaths {
    std::string old_path;
    std::string new_path;
};

// "diff --git a/X b/Y" → (X, Y). Paths containing " b/" are ambiguous in
// this header; the last occurrence is used, matching common tooling.
HeaderPaths parse_git_header(std::string_view rest)
{
    HeaderPaths paths;
    auto split = rest.rfind(" b/");
    if (starts_with(rest, "a/") && split != std::string_view::npos) {
        paths.old_path = std::string(rest.substr(2, split - 2));
        paths.new_path = std::string(rest.substr(split + 3));
    } else {
        auto space = rest.find(' ');
        if (space != std::string_view::npos) {
            paths.old_path = clean_path(rest.substr(0, space));
            paths.new_path = clean_path(rest.substr(space + 1));
        }
    }
    return paths;
}

class Parser {
public:
    explicit Parser(const std::string& text)
        : m_text(text)
    {
    }

    std::vector<FilePatch> parse()
    {
        std::size_t pos = 0;
        while (pos <= m_text.size()) {
            if (pos == m_text.size()) {
                if (pos == 0)
                    break; // empty input
                break;
            }
            m_line_offset = pos;
            std::size_t nl = m_text.find('\n', pos);
            std::string_view line(m_text.data() + pos,
                                  (nl == std::string::npos ? m_text.size() : nl) - pos);
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            handle_line(line);
            if (nl == std::string::npos)
                break;
            pos = nl + 1;
        }
        if (m_remaining_old > 0 || m_remaining_new > 0)
            fail("unexpected end of input inside a hunk");
        flush_file();
        return std::move(m_patches);
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw MalformedDiff(what, m_line_offset);
    }

    void flush_hunk()
    {
        if (!m_in_hunk)
            return;
        if (m_remaining_old > 0 || m_remaining_new > 0)
            fail("hunk shorter than its declared lengths");
        m_in_hunk = false;
    }

    void flush_file()
    {
        flush_hunk();
        if (!m_have_file)
            return;
        // Hunks must be sorted and non-overlapping on the old side.
        std::size_t prev_end = 0;
        bool first = true;
        for (const auto& hunk : m_file.hunks) {
            std::size_t start = hunk.old_start;
            std::size_t end = hunk.old_start + hunk.old_len;
            if (!first && start < prev_end)
                fail("overlapping or unsorted hunks");
            prev_end = std::max(end, start + 1); // zero-length anchors still order
            first = false;
        }
        m_patches.push_back(std::move(m_file));
        m_file = FilePatch{};
        m_have_file = false;
        m_have_old_path = false;
        m_have_new_path = false;
    }

    void begin_file()
    {
        flush_file();
        m_have_file = true;
    }

    std::size_t parse_number(std::string_view& s)
    {
        std::size_t value = 0;
        const char* begin = s.data();
        const char* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr == begin)
            fail("expected a number in hunk header");
        s.remove_prefix(static_cast<std::size_t>(ptr - begin));
        return value;
    }

    void parse_hunk_header(std::string_view line)
    {
        if (!m_have_file || !m_have_old_path || !m_have_new_path)
            fail("hunk header before file paths");
        flush_hunk();

        std::string_view s = line;
        if (!starts_with(s, "@@ -"))
            fail("malformed hunk header");
        s.remove_prefix(4);

        Hunk hunk;
        hunk.old_start = parse_number(s);
        hunk.old_len = 1;
        if (starts_with(s, ",")) {
            s.remove_prefix(1);
            hunk.old_len = parse_number(s);
        }
        if (!starts_with(s, " +"))
            fail("malformed hunk header");
        s.remove_prefix(2);
        hunk.new_start = parse_number(s);
        hunk.new_len = 1;
        if (starts_with(s, ",")) {
            s.remove_prefix(1);
            hunk.new_len = parse_number(s);
        }
        if (!starts_with(s, " @@"))
            fail("malformed hunk header");
        s.remove_prefix(3);
        if (starts_with(s, " "))
            s.remove_prefix(1);
        hunk.heading = std::string(s);

        m_old_no = hunk.old_start;
        m_new_no = hunk.new_start;
        m_remaining_old = hunk.old_len;
        m_remaining_new = hunk.new_len;
        m_file.hunks.push_back(std::move(hunk));
        m_in_hunk = true;
    }

    void handle_body_line(std::string_view line)
    {
        Hunk& hunk = m_file.hunks.back();
        char marker = line.empty() ? ' ' : line.front();
        std::string_view text = line.empty() ? line : line.substr(1);
        switch (marker) {
        case ' ': {
            if (m_remaining_old == 0 || m_remaining_new == 0)
                fail("context line exceeds hunk lengths");
            hunk.lines.push_back({ LineKind::Context, std::string(text), m_old_no, m_new_no });
            ++m_old_no;
            ++m_new_no;
            --m_remaining_old;
            --m_remaining_new;
            break;
        }
        case '-': {
            if (m_remaining_old == 0)
                fail("deleted line exceeds hunk old length");
            hunk.lines.push_back({ LineKind::Deleted, std::string(text), m_old_no, 0 });
            ++m_old_no;
            --m_remaining_old;
            break;
        }
        case '+': {
            if (m_remaining_new == 0)
                fail("added line exceeds hunk new length");
            hunk.lines.push_back({ LineKind::Added, std::string(text), 0, m_new_no });
            ++m_new_no;
            --m_remaining_new;
            break;
        }
        case '\\':
            // "\ No newline at end of file": terminators are normalized
            // away in the model, so this carries no information.
            break;
        default:
            fail("unexpected marker in hunk body");
        }
        if (m_remaining_old == 0 && m_remaining_new == 0)
            flush_hunk();
    }

    void handle_line(std::string_view line)
    {
        if (m_in_hunk) {
            handle_body_line(line);
            return;
        }
        if (starts_with(line, "diff --git ")) {
            begin_file();
            HeaderPaths paths = parse_git_header(line.substr(11));
            m_file.old_path = paths.old_path;
            m_file.new_path = paths.new_path;
            return;
        }
        if (starts_with(line, "--- ")) {
            if (!m_have_file)
                begin_file();
            m_file.old_path = clean_path(line.substr(4));
            m_have_old_path = true;
            return;
        }
        if (starts_with(line, "+++ ")) {
            if (!m_have_old_path)
                fail("'+++' without preceding '---'");
            m_file.new_path = clean_path(line.substr(4));
            m_have_new_path = true;
            return;
        }
        if (starts_with(line, "@@")) {
            parse_hunk_header(line);
            return;
        }
        if (m_have_file) {
            if (starts_with(line, "Binary files ") || starts_with(line, "GIT binary patch")) {
                m_file.is_binary = true;
                return;
            }
            if (starts_with(line, "rename from ")) {
                m_file.old_path = std::string(line.substr(12));
                return;
            }
            if (starts_with(line, "rename to ")) {
                m_file.new_path = std::string(line.substr(10));
                return;
            }
            if (starts_with(line, "new file mode ")) {
                m_file.old_path.clear();
                return;
            }
            if (starts_with(line, "deleted file mode ")) {
                m_file.new_path.clear();
                return;
            }
            if (starts_with(line, "index ") || starts_with(line, "old mode ")
                || starts_with(line, "new mode ") || starts_with(line, "similarity index ")
                || starts_with(line, "dissimilarity index ") || starts_with(line, "copy from ")
                || starts_with(line, "copy to ")) {
                return;
            }
            if (starts_with(line, "+") || starts_with(line, "-"))
                fail("patch body line outside any hunk");
            // Anything else between file sections (mail headers, commit
            // messages) is ignored.
            return;
        }
        if (starts_with(line, "+") || starts_with(line, "-") || starts_with(line, "@@"))
            fail("patch content before any file header");
        // Leading prose (e.g. format-patch headers) is ignored.
    }

    const std::string& m_text;
    std::size_t m_line_offset = 0;
    std::vector<FilePatch> m_patches;
    FilePatch m_file;
    bool m_have_file = false;
    bool m_have_old_path = false;
    bool m_have_new_path = false;
    bool m_in_hunk = false;
    std::size_t m_old_no = 0;
    std::size_t m_new_no = 0;
    std::size_t m_remaining_old = 0;
    std::size_t m_remaining_new = 0;
};

void render_range(std::string& out, std::size_t start, std::size_t len)
{
    out += std::to_string(start);
    if (len != 1) {
        out += ',';
        out += std::to_string(len);
    }
}

} // namespace

std::vector<FilePatch> parse_unified(const std::string& diff_text)
{
    return Parser(diff_text).parse();
}

std::string render(const std::vector<FilePatch>& patches)
{
    std::string out;
    for (const auto& patch : patches) {
        const std::string& header_old = patch.old_path.empty() ? patch.new_path : patch.old_path;
        const std::string& header_new = patch.new_path.empty() ? patch.old_path : patch.new_path;
        out += "diff --git a/" + header_old + " b/" + header_new + "\n";
        if (patch.old_path.empty())
            out += "new file mode 100644\n";
        if (patch.new_path.empty())
            out += "deleted file mode 100644\n";
        if (patch.is_binary) {
            out += "Binary files "
                + (patch.old_path.empty() ? std::string("/dev/null") : "a/" + patch.old_path)
                + " and "
                + (patch.new_path.empty() ? std::string("/dev/null") : "b/" + patch.new_path)
                + " differ\n";
            continue;
        }
        if (patch.hunks.empty() && patch.old_path != patch.new_path
            && !patch.old_path.empty() && !patch.new_path.empty()) {
            out += "rename from " + patch.old_path + "\n";
            out += "rename to " + patch.new_path + "\n";
            continue;
        }
        out += patch.old_path.empty() ? "--- /dev/null\n" : "--- a/" + patch.old_path + "\n";
        out += patch.new_path.empty() ? "+++ /dev/null\n" : "+++ b/" + patch.new_path + "\n";
        for (const auto& hunk : patch.hunks) {
            out += "@@ -";
            render_range(out, hunk.old_start, hunk.old_len);
            out += " +";
            render_range(out, hunk.new_start, hunk.new_len);
            out += " @@";
            if (!hunk.heading.empty()) {
                out += ' ';
                out += hunk.heading;
            }
            out += '\n';
            for (const auto& line : hunk.lines) {
                switch (line.kind) {
                case LineKind::Context:
                    out += ' ';
                    break;
                case LineKind::Added:
                    out += '+';
                    break;
                case LineKind::Deleted:
                    out += '-';
                    break;
                }
                out += line.text;
                out += '\n';
            }
        }
    }
    return out;
}

std::size_t count_changed_lines(const std::vector<FilePatch>& patches)
{
    std::size_t total = 0;
    for (const auto& patch : patches) {
        if (patch.is_binary)
            continue;
        for (const auto& hunk : patch.hunks)
            for (const auto& line : hunk.lines)
                if (line.kind != LineKind::Context)
                    ++total;
    }
    return total;
}

FilePatch diff_files(const std::string& old_path, const std::string& new_path,
                     const std::vector<std::string>& old_lines,
                     const std::vector<std::string>& new_lines,
                     std::size_t context)
{
    FilePatch patch;
    patch.old_path = old_path;
    patch.new_path = new_path;

    std::vector<MatchPair> pairs = diff_lines(old_lines, new_lines);

    // Change blocks: maximal runs of unmatched lines between two matches.
    struct Block {
        std::size_t old_first, old_after; // deleted lines [old_first, old_after)
        std::size_t new_first, new_after; // added lines  [new_first, new_after)
    };
    std::vector<Block> blocks;
    std::size_t next_old = 1, next_new = 1;
    auto note_gap = [&](std::size_t match_old, std::size_t match_new) {
        if (next_old < match_old || next_new < match_new)
            blocks.push_back({ next_old, match_old, next_new, match_new });
    };
    for (const auto& pair : pairs) {
        note_gap(pair.old_line, pair.new_line);
        next_old = pair.old_line + 1;
        next_new = pair.new_line + 1;
    }
    note_gap(old_lines.size() + 1, new_lines.size() + 1);
    if (blocks.empty())
        return patch;

    // Group blocks whose context margins would touch into one hunk.
    std::size_t group_start = 0;
    while (group_start < blocks.size()) {
        std::size_t group_end = group_start + 1;
        while (group_end < blocks.size()
               && blocks[group_end].old_first - blocks[group_end - 1].old_after <= 2 * context)
            ++group_end;

        const Block& first = blocks[group_start];
        const Block& last = blocks[group_end - 1];
        std::size_t ctx_before = std::min<std::size_t>(context, first.old_first - 1);
        std::size_t ctx_after = std::min<std::size_t>(context, old_lines.size() + 1 - last.old_after);

        Hunk hunk;
        std::size_t old_no = first.old_first - ctx_before;
        std::size_t new_no = first.new_first - ctx_before;
        for (std::size_t b = group_start; b < group_end; ++b) {
            const Block& block = blocks[b];
            while (old_no < block.old_first) {
                hunk.lines.push_back({ LineKind::Context, old_lines[old_no - 1], old_no, new_no });
                ++old_no;
                ++new_no;
            }
            for (std::size_t i = block.old_first; i < block.old_after; ++i)
                hunk.lines.push_back({ LineKind::Deleted, old_lines[i - 1], i, 0 });
            for (std::size_t j = block.new_first; j < block.new_after; ++j)
                hunk.lines.push_back({ LineKind::Added, new_lines[j - 1], 0, j });
            old_no = block.old_after;
            new_no = block.new_after;
        }
        for (std::size_t i = 0; i < ctx_after; ++i) {
            hunk.lines.push_back({ LineKind::Context, old_lines[old_no - 1], old_no, new_no });
            ++old_no;
            ++new_no;
        }

        std::size_t first_old = first.old_first - ctx_before;
        std::size_t first_new = first.new_first - ctx_before;
        hunk.old_len = old_no - first_old;
        hunk.new_len = new_no - first_new;
        // git convention: a zero-length side anchors at the line before it.
        hunk.old_start = hunk.old_len == 0 ? first_old - 1 : first_old;
        hunk.new_start = hunk.new_len == 0 ? first_new - 1 : first_new;
        patch.hunks.push_back(std::move(hunk));

        group_start = group_end;
    }
    return patch;
}

std::string patch_to_json(const FilePatch& patch)
{
    nlohmann::ordered_json j;
    j["old_path"] = patch.old_path;
    j["new_path"] = patch.new_path;
    j["is_binary"] = patch.is_binary;
    j["hunks"] = nlohmann::ordered_json::array();
    for (const auto& hunk : patch.hunks) {
        nlohmann::ordered_json h;
        h["old_start"] = hunk.old_start;
        h["old_len"] = hunk.old_len;
        h["new_start"] = hunk.new_start;
        h["new_len"] = hunk.new_len;
        h["heading"] = hunk.heading;
        h["lines"] = nlohmann::ordered_json::array();
        for (const auto& line : hunk.lines) {
            const char* kind = line.kind == LineKind::Context ? "context"
                : line.kind == LineKind::Added               ? "added"
                                                             : "deleted";
            h["lines"].push_back({ { "kind", kind },
                                   { "text", line.text },
                                   { "old_no", line.old_no },
                                   { "new_no", line.new_no } });
        }
        j["hunks"].push_back(std::move(h));
    }
    return j.dump();
}

} // namespace szzkit
