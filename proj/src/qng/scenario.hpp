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


#ifndef QNG_SCENARIO_HPP
#define QNG_SCENARIO_HPP

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "qng/ramsey.hpp"
#include "qng/thresholds.hpp"

namespace qng {

struct ScenarioConfig {
    std::vector<FockPair> pairs;
    std::vector<double> delays;
    NoiseConfig noise;
    long shots = 0;
    int phases = 16;
    uint64_t seed = 1;
    ThresholdKind kind = ThresholdKind::GenuineN;
    int trunc_dim = 0;
};

/// Keys: pair | pairs, delays, noise{...}, shots, phases, seed, kind, trunc_dim. Unknown keys are
/// rejected so typos do not silently fall back to defaults.
ScenarioConfig parse_scenario(const nlohmann::json &j);
nlohmann::json scenario_to_json(const ScenarioConfig &c);

/// Runs decay_scan per pair; the result lists every delay with its fringe.
nlohmann::json run_scenario(const ScenarioConfig &c, ThresholdCache &cache);

}  // namespace qng

#endif
