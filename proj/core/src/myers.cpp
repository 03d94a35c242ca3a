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

#include "szzkit/myers.hpp"

#include <limits>
#include <unordered_map>

#include "szzkit/errors.hpp"

namespace szzkit {

namespace {

// The divide-and-conquer refinement of Myers' O(ND) algorithm: find a point
// on a middle snake with forward/backward furthest-reaching searches, split
// the box there, and recurse. kvdf/kvdb hold, per diagonal k, the furthest
// x reached by the forward and backward searches respectively.
class MyersDiff {
public:
    MyersDiff(const std::vector<int>& a, const std::vector<int>& b)
        : m_a(a)
        , m_b(b)
    {
        // Diagonals span [-(M+1), N+1]; base shifts them into the arrays.
        std::size_t size = a.size() + b.size() + 3;
        m_fwd_store.assign(size, 0);
        m_bwd_store.assign(size, 0);
        m_base = static_cast<long>(b.size()) + 1;
    }

    void run(std::vector<MatchPair>& out)
    {
        compare(0, static_cast<long>(m_a.size()), 0, static_cast<long>(m_b.size()), out, 0);
    }

private:
    long& kvdf(long k) { return m_fwd_store[static_cast<std::size_t>(k + m_base)]; }
    long& kvdb(long k) { return m_bwd_store[static_cast<std::size_t>(k + m_base)]; }

    void find_split(long off1, long lim1, long off2, long lim2, long& sx, long& sy)
    {
        const long dmin = off1 - lim2;
        const long dmax = lim1 - off2;
        const long fmid = off1 - off2;
        const long bmid = lim1 - lim2;
        const bool odd = ((fmid - bmid) & 1) != 0;
        long fmin = fmid, fmax = fmid;
        long bmin = bmid, bmax = bmid;

        kvdf(fmid) = off1;
        kvdb(bmid) = lim1;

        for (;;) {
            if (fmin > dmin)
                kvdf(--fmin - 1) = -1;
            else
                ++fmin;
            if (fmax < dmax)
                kvdf(++fmax + 1) = -1;
            else
                --fmax;
            for (long d = fmax; d >= fmin; d -= 2) {
                long i1 = (kvdf(d - 1) >= kvdf(d + 1)) ? kvdf(d - 1) + 1 : kvdf(d + 1);
                long i2 = i1 - d;
                while (i1 < lim1 && i2 < lim2 && m_a[static_cast<std::size_t>(i1)] == m_b[static_cast<std::size_t>(i2)]) {
                    ++i1;
                    ++i2;
                }
                kvdf(d) = i1;
                if (odd && d >= bmin && d <= bmax && kvdb(d) <= i1) {
                    sx = i1;
                    sy = i2;
                    return;
                }
            }

            if (bmin > dmin)
                kvdb(--bmin - 1) = std::numeric_limits<long>::max();
            else
                ++bmin;
            if (bmax < dmax)
                kvdb(++bmax + 1) = std::numeric_limits<long>::max();
            else
                --bmax;
            for (long d = bmax; d >= bmin; d -= 2) {
                long i1 = (kvdb(d - 1) < kvdb(d + 1)) ? kvdb(d - 1) : kvdb(d + 1) - 1;
                long i2 = i1 - d;
                while (i1 > off1 && i2 > off2 && m_a[static_cast<std::size_t>(i1 - 1)] == m_b[static_cast<std::size_t>(i2 - 1)]) {
                    --i1;
                    --i2;
                }
                kvdb(d) = i1;
                if (!odd && d >= fmin && d <= fmax && i1 <= kvdf(d)) {
                    sx = i1;
                    sy = i2;
                    return;
                }
            }
        }
    }

    void compare(long off1, long lim1, long off2, long lim2, std::vector<MatchPair>& out, int depth)
    {
        if (depth > 2 * static_cast<int>(m_a.size() + m_b.size()) + 64)
            throw Error("diff recursion exceeded bound"); // unreachable safety net

        // Shave the common prefix and suffix; only the prefix is emitted
        // now, the suffix after the recursion to keep pairs ordered.
        while (off1 < lim1 && off2 < lim2 && m_a[static_cast<std::size_t>(off1)] == m_b[static_cast<std::size_t>(off2)]) {
            out.push_back({ static_cast<std::size_t>(off1) + 1, static_cast<std::size_t>(off2) + 1 });
            ++off1;
            ++off2;
        }
        long suffix = 0;
        while (lim1 > off1 && lim2 > off2 && m_a[static_cast<std::size_t>(lim1 - 1)] == m_b[static_cast<std::size_t>(lim2 - 1)]) {
            --lim1;
            --lim2;
            ++suffix;
        }

        if (off1 < lim1 && off2 < lim2) {
            long sx = 0, sy = 0;
            find_split(off1, lim1, off2, lim2, sx, sy);
            compare(off1, sx, off2, sy, out, depth + 1);
            compare(sx, lim1, sy, lim2, out, depth + 1);
        }

        for (long i = 0; i < suffix; ++i)
            out.push_back({ static_cast<std::size_t>(lim1 + i) + 1, static_cast<std::size_t>(lim2 + i) + 1 });
    }

    const std::vector<int>& m_a;
    const std::vector<int>& m_b;
    std::vector<long> m_fwd_store;
    std::vector<long> m_bwd_store;
    long m_base = 0;
};

std::vector<int> intern(const std::vector<std::string>& lines,
                        std::unordered_map<std::string, int>& table)
{
    std::vector<int> ids;
    ids.reserve(lines.size());
    for (const auto& line : lines) {
        auto [it, inserted] = table.try_emplace(line, static_cast<int>(table.size()));
        ids.push_back(it->second);
    }
    return ids;
}

} // namespace

std::vector<MatchPair> diff_lines(const std::vector<std::string>& old_lines,
                                  const std::vector<std::string>& new_lines)
{
    std::unordered_map<std::string, int> table;
    std::vector<int> a = intern(old_lines, table);
    std::vector<int> b = intern(new_lines, table);

    std::vector<MatchPair> pairs;
    pairs.reserve(std::min(a.size(), b.size()));
    MyersDiff(a, b).run(pairs);
    return pairs;
}

} // namespace szzkit
