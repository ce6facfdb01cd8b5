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


#include "qng/json_io.hpp"

#include "qng/error.hpp"

namespace qng {

using nlohmann::json;

json params_to_json(const GaussianParams &g) {
    return json{{"xi_mag", g.xi_mag}, {"xi_phase", g.xi_phase}, {"alpha_mag", g.alpha_mag},
                {"alpha_phase", g.alpha_phase}};
}

GaussianParams params_from_json(const json &j) {
    return GaussianParams::make(j.at("xi_mag").get<double>(), j.at("xi_phase").get<double>(),
                                j.at("alpha_mag").get<double>(), j.at("alpha_phase").get<double>());
}

json threshold_to_json(const ThresholdResult &r) {
    json j;
    j["kind"] = kind_name(r.kind);
    j["pair"] = {r.pair.m(), r.pair.n()};
    j["value"] = r.value;
    j["argmax"] = params_to_json(r.argmax);
    if (r.fock_index) {
        j["fock_index"] = *r.fock_index;
    }
    if (r.core) {
        json re = json::array();
        json im = json::array();
        for (Eigen::Index i = 0; i < r.core->coeffs().size(); ++i) {
            re.push_back(r.core->coeffs()[i].real());
            im.push_back(r.core->coeffs()[i].imag());
        }
        j["core_state"] = {{"re", re}, {"im", im}};
    }
    const auto &d = r.diagnostics;
    json starts = json::array();
    for (size_t i = 0; i < d.start_values.size(); ++i) {
        starts.push_back({{"value", d.start_values[i]}, {"converged", static_cast<bool>(d.start_converged[i])}});
    }
    j["diagnostics"] = {{"grid_points", d.grid_points},       {"starts", starts},
                        {"converged", d.converged},           {"bound_retries", d.bound_retries},
                        {"final_r_bound", d.final_r_bound},   {"final_alpha_bound", d.final_alpha_bound},
                        {"truncation_delta", d.truncation_delta}, {"eigen_delta", d.eigen_delta}};
    return j;
}

ThresholdResult threshold_from_json(const json &j) {
    const auto pair = j.at("pair");
    ThresholdResult r{parse_kind(j.at("kind").get<std::string>()),
                      FockPair(pair.at(0).get<int>(), pair.at(1).get<int>()),
                      j.at("value").get<double>(),
                      params_from_json(j.at("argmax")),
                      std::nullopt,
                      std::nullopt,
                      {}};
    if (j.contains("fock_index")) {
        r.fock_index = j["fock_index"].get<int>();
    }
    if (j.contains("core_state")) {
        const auto &re = j["core_state"].at("re");
        const auto &im = j["core_state"].at("im");
        require(re.size() == im.size(), "core state arrays differ in length");
        Eigen::VectorXcd c(re.size());
        for (size_t i = 0; i < re.size(); ++i) {
            c[i] = cplx(re[i].get<double>(), im[i].get<double>());
        }
        // Keep stored coefficients bit-exact so a reloaded result reproduces the original output.
        r.core = std::abs(c.norm() - 1.0) < 1e-12 ? CoreState(c) : CoreState(c.normalized());
    }
    if (j.contains("diagnostics")) {
        const auto &d = j["diagnostics"];
        r.diagnostics.grid_points = d.value("grid_points", 0);
        r.diagnostics.converged = d.value("converged", true);
        r.diagnostics.bound_retries = d.value("bound_retries", 0);
        r.diagnostics.final_r_bound = d.value("final_r_bound", 0.0);
        r.diagnostics.final_alpha_bound = d.value("final_alpha_bound", 0.0);
        r.diagnostics.truncation_delta = d.value("truncation_delta", 0.0);
        r.diagnostics.eigen_delta = d.value("eigen_delta", 0.0);
        for (const auto &s : d.value("starts", json::array())) {
            r.diagnostics.start_values.push_back(s.at("value").get<double>());
            r.diagnostics.start_converged.push_back(s.at("converged").get<bool>());
        }
    }
    return r;
}

json certification_to_json(const CertificationReport &rep) {
    json kinds = json::object();
    for (const auto &k : rep.kinds) {
        kinds[kind_name(k.kind)] = {{"threshold", k.threshold},
                                    {"margin", k.margin},
                                    {"verdict", k.verdict},
                                    {"marginal", k.marginal},
                                    {"depth", k.depth ? json(*k.depth) : json(nullptr)}};
    }
    return json{{"pair", {rep.pair.m(), rep.pair.n()}},
                {"measured", rep.measured},
                {"uncertainty", rep.uncertainty},
                {"any_verdict", rep.any_verdict()},
                {"kinds", kinds}};
}

json mc_to_json(const McReport &rep) {
    json hist = json::array();
    for (const auto &b : rep.histogram) {
        hist.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
    }
    return json{{"kind", kind_name(rep.kind)},
                {"pair", {rep.pair.m(), rep.pair.n()}},
                {"samples", rep.samples},
                {"seed", rep.seed},
                {"threshold", rep.threshold},
                {"max_observed", rep.max_observed},
                {"violations", rep.violations},
                {"slack", rep.slack},
                {"closest_margin", rep.closest_margin},
                {"margin_histogram", hist}};
}

json depth_to_json(const DepthResult &d) {
    return json{{"pair", {d.pair.m(), d.pair.n()}}, {"kind", kind_name(d.threshold_kind)},
                {"measured", d.measured},           {"threshold", d.threshold},
                {"depth", d.depth},                 {"certified", d.certified}};
}

}  // namespace qng
