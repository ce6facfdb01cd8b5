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


#include "qng/scenario.hpp"

#include <set>

#include "qng/error.hpp"

namespace qng {

using nlohmann::json;

namespace {

FockPair pair_from(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        fail(ErrorCode::Config, "a pair must be a two-element integer array");
    }
    try {
        return FockPair(j[0].get<int>(), j[1].get<int>());
    } catch (const Error &e) {
        fail(ErrorCode::Config, e.what());
    }
}

template <typename T>
T number(const json &obj, const char *key, T fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj[key];
    if (!v.is_number()) {
        fail(ErrorCode::Config, std::string("config key '") + key + "' must be a number");
    }
    return v.get<T>();
}

void reject_unknown(const json &obj, const std::set<std::string> &known, const std::string &where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key())) {
            fail(ErrorCode::Config, "unknown key '" + it.key() + "' in " + where);
        }
    }
}

}  // namespace

ScenarioConfig parse_scenario(const json &j) {
    if (!j.is_object()) {
        fail(ErrorCode::Config, "scenario config must be a JSON object");
    }
    reject_unknown(j, {"pair", "pairs", "delays", "noise", "shots", "phases", "seed", "kind", "trunc_dim"}, "config");
    ScenarioConfig c;
    if (j.contains("pair")) {
        c.pairs.push_back(pair_from(j["pair"]));
    }
    if (j.contains("pairs")) {
        if (!j["pairs"].is_array()) {
            fail(ErrorCode::Config, "'pairs' must be an array of pairs");
        }
        for (const auto &p : j["pairs"]) {
            c.pairs.push_back(pair_from(p));
        }
    }
    if (c.pairs.empty()) {
        fail(ErrorCode::Config, "config needs 'pair' or 'pairs'");
    }
    if (!j.contains("delays") || !j["delays"].is_array() || j["delays"].empty()) {
        fail(ErrorCode::Config, "config needs a non-empty 'delays' array (seconds)");
    }
    for (const auto &d : j["delays"]) {
        if (!d.is_number() || d.get<double>() < 0.0) {
            fail(ErrorCode::Config, "delays must be non-negative numbers");
        }
        c.delays.push_back(d.get<double>());
    }
    if (!std::is_sorted(c.delays.begin(), c.delays.end())) {
        fail(ErrorCode::Config, "delays must be sorted ascending");
    }
    if (j.contains("noise")) {
        const json &n = j["noise"];
        if (!n.is_object()) {
            fail(ErrorCode::Config, "'noise' must be an object");
        }
        reject_unknown(n,
                       {"initial_thermal_nbar", "heating_rate", "dephasing_rate", "pulse_error",
                        "electronic_coherence_time", "pulse_duration", "shelving_contrast_factor", "motional_detuning"},
                       "noise");
        c.noise.initial_thermal_nbar = number(n, "initial_thermal_nbar", 0.0);
        c.noise.heating_rate = number(n, "heating_rate", 0.0);
        c.noise.dephasing_rate = number(n, "dephasing_rate", 0.0);
        c.noise.pulse_error = number(n, "pulse_error", 0.0);
        c.noise.electronic_coherence_time = number(n, "electronic_coherence_time", 0.0);
        c.noise.pulse_duration = number(n, "pulse_duration", 0.0);
        c.noise.shelving_contrast_factor = number(n, "shelving_contrast_factor", 1.0);
        c.noise.motional_detuning = number(n, "motional_detuning", 0.0);
    }
    c.shots = number<long>(j, "shots", 0);
    c.phases = number<int>(j, "phases", 16);
    c.seed = number<uint64_t>(j, "seed", 1);
    c.trunc_dim = number<int>(j, "trunc_dim", 0);
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) {
            fail(ErrorCode::Config, "'kind' must be a string");
        }
        try {
            c.kind = parse_kind(j["kind"].get<std::string>());
        } catch (const Error &e) {
            fail(ErrorCode::Config, e.what());
        }
    }
    try {
        c.noise.validate();
    } catch (const Error &e) {
        fail(ErrorCode::Config, e.what());
    }
    if (c.shots < 0 || c.phases < 3 || c.trunc_dim < 0) {
        fail(ErrorCode::Config, "need shots >= 0, phases >= 3 and trunc_dim >= 0");
    }
    return c;
}

json scenario_to_json(const ScenarioConfig &c) {
    json pairs = json::array();
    for (const auto &p : c.pairs) {
        pairs.push_back({p.m(), p.n()});
    }
    const NoiseConfig &n = c.noise;
    return json{{"pairs", pairs},
                {"delays", c.delays},
                {"noise",
                 {{"initial_thermal_nbar", n.initial_thermal_nbar},
                  {"heating_rate", n.heating_rate},
                  {"dephasing_rate", n.dephasing_rate},
                  {"pulse_error", n.pulse_error},
                  {"electronic_coherence_time", n.electronic_coherence_time},
                  {"pulse_duration", n.pulse_duration},
                  {"shelving_contrast_factor", n.shelving_contrast_factor},
                  {"motional_detuning", n.motional_detuning}}},
                {"shots", c.shots},
                {"phases", c.phases},
                {"seed", c.seed},
                {"kind", kind_name(c.kind)},
                {"trunc_dim", c.trunc_dim}};
}

json run_scenario(const ScenarioConfig &c, ThresholdCache &cache) {
    json out = json::array();
    for (const auto &pair : c.pairs) {
        ScanOptions opt;
        opt.phases = c.phases;
        opt.shots = c.shots;
        opt.seed = c.seed;
        opt.dim = c.trunc_dim;
        const int dim = opt.dim > 0 ? opt.dim : default_ramsey_dim(pair, c.noise, c.delays.back());
        opt.dim = dim;
        const auto points = decay_scan(pair, c.delays, c.noise, c.kind, cache, opt);
        const double thr = cache.get(c.kind, pair).value;
        json pts = json::array();
        for (const auto &p : points) {
            json fringe = json::array();
            for (const auto &f : p.fringe.points) {
                fringe.push_back({{"phase", f.phase}, {"pe", f.pe}, {"shots", f.shots}});
            }
            pts.push_back({{"delay", p.delay},
                           {"contrast", p.contrast},
                           {"contrast_err", p.contrast_err},
                           {"phase_offset", p.fringe.fit_phase_offset},
                           {"depth", p.depth ? json(*p.depth) : json(nullptr)},
                           {"verdict", p.contrast > thr},
                           {"fringe", fringe}});
        }
        out.push_back({{"pair", {pair.m(), pair.n()}},
                       {"kind", kind_name(c.kind)},
                       {"threshold", thr},
                       {"trunc_dim", dim},
                       {"points", pts}});
    }
    return out;
}

}  // namespace qng
