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


#include <gtest/gtest.h>

#include "qng/error.hpp"
#include "qng/json_io.hpp"
#include "qng/scenario.hpp"

using namespace qng;
using nlohmann::json;

namespace {

ErrorCode code_of(const json &j) {
    try {
        parse_scenario(j);
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "accepted " << j.dump();
    return ErrorCode::Io;
}

}  // namespace

TEST(Scenario, parses_and_round_trips) {
    const json j = json::parse(R"({"pairs": [[0,2],[1,3]], "delays": [0, 0.001, 0.004],
        "noise": {"heating_rate": 3.2, "initial_thermal_nbar": 0.07}, "shots": 100, "phases": 12,
        "seed": 9, "kind": "gaussian-min"})");
    const auto c = parse_scenario(j);
    ASSERT_EQ(c.pairs.size(), 2u);
    EXPECT_EQ(c.pairs[1], FockPair(1, 3));
    EXPECT_EQ(c.delays.size(), 3u);
    EXPECT_DOUBLE_EQ(c.noise.heating_rate, 3.2);
    EXPECT_EQ(c.kind, ThresholdKind::GaussianMin);
    const auto again = parse_scenario(scenario_to_json(c));
    EXPECT_EQ(scenario_to_json(again), scenario_to_json(c));
}

TEST(Scenario, rejects_bad_configs) {
    EXPECT_EQ(code_of(json::parse(R"({"pair": [0,1], "delays": [0], "colour": 1})")), ErrorCode::Config);
    EXPECT_EQ(code_of(json::parse(R"({"pair": [0,1], "delays": [0], "noise": {"heat": 1}})")), ErrorCode::Config);
    EXPECT_EQ(code_of(json::parse(R"({"pair": [1,1], "delays": [0]})")), ErrorCode::Config);
    EXPECT_EQ(code_of(json::parse(R"({"pair": [0,1], "delays": [0.2, 0.1]})")), ErrorCode::Config);
    EXPECT_EQ(code_of(json::parse(R"({"pair": [0,1]})")), ErrorCode::Config);
    EXPECT_EQ(code_of(json::parse(R"({"pair": [0,1], "delays": [0], "phases": 2})")), ErrorCode::Config);
    EXPECT_EQ(code_of(json::parse(R"({"pair": [0,1], "delays": [0], "kind": "quantum"})")), ErrorCode::Config);
    EXPECT_EQ(code_of(json::parse(R"({"pair": [0,1], "delays": [0], "noise": {"shelving_contrast_factor": 0}})")),
              ErrorCode::Config);
}

TEST(Scenario, ideal_runs) {
    ThresholdCache cache;
    const auto c = parse_scenario(json::parse(R"({"pairs": [[0,2],[0,4],[0,6]], "delays": [0]})"));
    const json out = run_scenario(c, cache);
    ASSERT_EQ(out.size(), 3u);
    for (const auto &r : out) {
        EXPECT_NEAR(r["points"][0]["contrast"].get<double>(), 1.0, 1e-6);
        EXPECT_TRUE(r["points"][0]["verdict"].get<bool>());
        EXPECT_EQ(r["points"][0]["fringe"].size(), 16u);
    }
    const double d4 = out[1]["points"][0]["depth"].get<double>();
    const double d6 = out[2]["points"][0]["depth"].get<double>();
    EXPECT_NEAR(d4 / d6, 2.0, 0.3);
}

TEST(Scenario, deterministic_with_shots) {
    ThresholdCache cache;
    const auto c = parse_scenario(
        json::parse(R"({"pair": [0,1], "delays": [0, 0.002], "shots": 100, "seed": 4, "noise": {"dephasing_rate": 5}})"));
    EXPECT_EQ(run_scenario(c, cache).dump(), run_scenario(c, cache).dump());
}

TEST(JsonIo, threshold_round_trip) {
    const auto r = genuine_threshold(FockPair(0, 3));
    const auto back = threshold_from_json(threshold_to_json(r));
    EXPECT_EQ(back.kind, r.kind);
    EXPECT_EQ(back.pair, r.pair);
    EXPECT_EQ(back.value, r.value);
    EXPECT_EQ(back.argmax.alpha_mag, r.argmax.alpha_mag);
    ASSERT_TRUE(back.core.has_value());
    EXPECT_LT((back.core->coeffs() - r.core->coeffs()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(threshold_to_json(back).dump(), threshold_to_json(r).dump());
}
