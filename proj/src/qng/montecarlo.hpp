// Copyright 2026 The qngcoh Authors
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


#ifndef QNG_MONTECARLO_HPP
#define QNG_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "qng/thresholds.hpp"

namespace qng {

struct MarginBucket {
    double lo;
    double hi;
    long count;
};

struct McReport {
    ThresholdKind kind;
    FockPair pair;
    long samples;
    uint64_t seed;
    double threshold;
    double max_observed;
    // Samples with observed > threshold + slack.
    long violations;
    double slack;
    // threshold - max_observed.
    double closest_margin;
    std::vector<MarginBucket> histogram;
};

inline constexpr long kMcPartition = 8192;
inline constexpr double kMcSlack = 1e-3;

/// Half the samples are drawn over the whole search box, half from a neighbourhood of the
/// threshold's maximizer, so both soundness far away and near the optimum get exercised.
/// Partitions of kMcPartition samples use derived seeds; the report does not depend on `threads`.
McReport mc_verify(ThresholdKind kind, const FockPair &pair, long samples, uint64_t seed, ThresholdCache &cache,
                   int threads = 0);

}  // namespace qng

#endif
