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

#ifndef SZZKIT_METRICS_HPP
#define SZZKIT_METRICS_HPP

#include <vector>

#include "szzkit/dataset.hpp"
#include "szzkit/pipeline.hpp"
#include "szzkit/repo.hpp"

namespace szzkit {

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long tp = 0;
    long fp = 0;
    long fn = 0;
};

// precision/recall/F1 from summed counts; undefined ratios are 0.
Metrics metrics_from_counts(long tp, long fp, long fn);

// Micro-averaged metrics: per entry, tp += |predicted ∩ inducing|,
// fp += |predicted \ inducing|, fn += |inducing \ predicted|; ratios
// computed from the sums. Inputs must be aligned index-by-index on the
// fix id (MisalignedDataset otherwise). Empty predictions add fn only.
Metrics compute_metrics(const std::vector<Prediction>& predictions,
                        const std::vector<DatasetEntry>& truth);

enum class SizeClass { Small, Large };

// A fix is large when its diff (against the first parent) changes more
// than five lines, counting additions plus deletions.
SizeClass classify_size(Repo& repo, const CommitId& fix);

} // namespace szzkit

#endif
