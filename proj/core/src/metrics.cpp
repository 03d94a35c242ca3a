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

#include "szzkit/metrics.hpp"

#include "szzkit/errors.hpp"
#include "szzkit/patch.hpp"

#include <algorithm>

namespace szzkit {

Metrics metrics_from_counts(long tp, long fp, long fn)
{
    Metrics m;
    m.tp = tp;
    m.fp = fp;
    m.fn = fn;
    m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = m.precision + m.recall > 0.0
        ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
        : 0.0;
    return m;
}

namespace {

// Ids match when equal or when one is a (≥7 char) prefix of the other, so
// datasets may carry abbreviated ids.
bool ids_match(const std::string& a, const std::string& b)
{
    if (a == b)
        return true;
    const std::string& shorter = a.size() <= b.size() ? a : b;
    const std::string& longer = a.size() <= b.size() ? b : a;
    return shorter.size() >= 7 && longer.compare(0, shorter.size(), shorter) == 0;
}

} // namespace

Metrics compute_metrics(const std::vector<Prediction>& predictions,
                        const std::vector<DatasetEntry>& truth)
{
    if (predictions.size() != truth.size())
        throw MisalignedDataset("got " + std::to_string(predictions.size())
                                + " predictions for " + std::to_string(truth.size())
                                + " truth entries");
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const Prediction& prediction = predictions[i];
        const DatasetEntry& entry = truth[i];
        if (!ids_match(prediction.fix.hex(), entry.fix))
            throw MisalignedDataset("entry " + std::to_string(i + 1) + ": prediction is for "
                                    + prediction.fix.hex() + ", truth is for " + entry.fix);

        std::vector<bool> truth_used(entry.inducing.size(), false);
        for (const CommitId& predicted : prediction.predicted) {
            bool matched = false;
            for (std::size_t t = 0; t < entry.inducing.size(); ++t) {
                if (!truth_used[t] && ids_match(predicted.hex(), entry.inducing[t])) {
                    truth_used[t] = true;
                    matched = true;
                    break;
                }
            }
            matched ? ++tp : ++fp;
        }
        fn += static_cast<long>(
            std::count(truth_used.begin(), truth_used.end(), false));
    }
    return metrics_from_counts(tp, fp, fn);
}

SizeClass classify_size(Repo& repo, const CommitId& fix)
{
    return count_changed_lines(repo.diff_patches(fix)) > 5 ? SizeClass::Large
                                                           : SizeClass::Small;
}

} // namespace szzkit
