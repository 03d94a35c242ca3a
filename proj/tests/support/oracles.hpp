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

#ifndef SZZKIT_TESTS_ORACLES_HPP
#define SZZKIT_TESTS_ORACLES_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "support/repo_builder.hpp"
#include "szzkit/util.hpp"

namespace szzkit::testing {

// Random file of up to max_len lines over a small alphabet (repeats are
// frequent, stressing ambiguous alignments).
std::vector<std::string> random_lines(SplitMix64& rng, std::size_t max_len,
                                      std::size_t alphabet);

// A randomly mutated copy: line insertions, deletions, and replacements
// drawn from the same alphabet.
std::vector<std::string> mutate_lines(const std::vector<std::string>& base, SplitMix64& rng,
                                      std::size_t alphabet);

// Textbook quadratic DP; the reference the production diff must equal in
// matched-pair count.
std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// One maximum-cardinality alignment as 1-based (a_line, b_line) pairs. For
// files whose shared lines keep their relative order (our generated
// histories), the maximum alignment is unique, so this is THE alignment.
std::vector<std::pair<std::size_t, std::size_t>> lcs_pairs(const std::vector<std::string>& a,
                                                           const std::vector<std::string>& b);

struct OracleOrigin {
    std::string commit; // builder name
    std::string path;
    std::size_t line = 0;

    friend bool operator==(const OracleOrigin&, const OracleOrigin&) = default;
};

// Brute-force provenance replay over a declared history: walks the model
// forward in declaration order and assigns every line of every file version
// the commit that introduced it (first-parent semantics, declared renames).
class ProvenanceOracle {
public:
    explicit ProvenanceOracle(const RepoBuilder& builder);

    // Origins of all lines of `path` at `commit`; throws when absent.
    const std::vector<OracleOrigin>& origins(const std::string& commit,
                                             const std::string& path) const;

private:
    std::map<std::pair<std::string, std::string>, std::vector<OracleOrigin>> m_origins;
};

} // namespace szzkit::testing

#endif
