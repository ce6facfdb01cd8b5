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


#ifndef QNG_JSON_IO_HPP
#define QNG_JSON_IO_HPP

#include "json.hpp"
#include "qng/channels.hpp"
#include "qng/montecarlo.hpp"
#include "qng/thresholds.hpp"

namespace qng {

nlohmann::json params_to_json(const GaussianParams &g);
GaussianParams params_from_json(const nlohmann::json &j);

nlohmann::json threshold_to_json(const ThresholdResult &r);
ThresholdResult threshold_from_json(const nlohmann::json &j);

nlohmann::json certification_to_json(const CertificationReport &rep);
nlohmann::json mc_to_json(const McReport &rep);
nlohmann::json depth_to_json(const DepthResult &d);

}  // namespace qng

#endif
