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

#ifndef SZZKIT_DATASET_HPP
#define SZZKIT_DATASET_HPP

#include <string>
#include <vector>

#include "szzkit/noise.hpp"

namespace szzkit {

// One labeled evaluation case: a bug-fixing commit and its known inducing
// commits in a named repository.
struct DatasetEntry {
    std::string repo_name;
    std::string fix;                   // hex id, full or unambiguous prefix
    std::vector<std::string> inducing; // non-empty; never contains fix
    Language language = Language::C;
};

// Loads a JSON-Lines dataset ({"repo", "fix", "inducing", "language"} per
// line). Blank lines are skipped. Malformed lines or invariant violations
// throw MisalignedDataset with the line number.
std::vector<DatasetEntry> load_dataset(const std::string& path);

} // namespace szzkit

#endif
