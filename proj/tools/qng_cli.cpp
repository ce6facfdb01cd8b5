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


#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qng/qng.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFailed = 2, kNoVerdict = 3, kViolations = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    qng_context *ctx = nullptr;
    Context() {
        if (qng_context_create(&ctx) != QNG_OK) {
            throw std::runtime_error("could not create library context");
        }
    }
    ~Context() {
        qng_context_destroy(ctx);
    }
    Context(const Context &) = delete;
    Context &operator=(const Context &) = delete;
    std::string error() const {
        return qng_context_last_error(ctx);
    }
};

// Takes ownership of a library string.
json take_json(char *s) {
    std::unique_ptr<char, void (*)(char *)> guard(s, qng_free_string);
    return json::parse(s);
}

std::pair<int, int> parse_pair(const std::string &s) {
    int m = 0, n = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%d,%d%c", &m, &n, &tail) != 2) {
        throw UsageError("pair must look like m,n (got '" + s + "')");
    }
    return {m, n};
}

qng_threshold_kind parse_kind(const std::string &s) {
    if (s == "classical") return QNG_KIND_CLASSICAL;
    if (s == "gaussian-min" || s == "min") return QNG_KIND_GAUSSIAN_MIN;
    if (s == "gaussian-intrinsic" || s == "intrinsic") return QNG_KIND_GAUSSIAN_INTRINSIC;
    if (s == "genuine") return QNG_KIND_GENUINE;
    throw UsageError("unknown kind '" + s + "' (classical, gaussian-min, gaussian-intrinsic, genuine)");
}

const char *kind_key(qng_threshold_kind k) {
    switch (k) {
        case QNG_KIND_CLASSICAL:
            return "classical";
        case QNG_KIND_GAUSSIAN_MIN:
            return "gaussian-min";
        case QNG_KIND_GAUSSIAN_INTRINSIC:
            return "gaussian-intrinsic";
        case QNG_KIND_GENUINE:
            return "genuine";
    }
    return "?";
}

const char *status_key(qng_status s) {
    switch (s) {
        case QNG_OK:
            return "ok";
        case QNG_ERR_INVALID_ARGUMENT:
            return "invalid-argument";
        case QNG_ERR_NOT_CONVERGED:
            return "not-converged";
        case QNG_ERR_TRUNCATION:
            return "truncation";
        case QNG_ERR_RANGE:
            return "range";
        case QNG_ERR_FIT:
            return "fit";
        case QNG_ERR_IO:
            return "io";
        case QNG_ERR_CONFIG:
            return "config";
        case QNG_ERR_CONDITIONING:
            return "conditioning";
        case QNG_ERR_UNSUPPORTED_ORDER:
            return "unsupported-order";
        case QNG_ERR_INTERNAL:
            return "internal";
    }
    return "unknown";
}

class Manifest {
   public:
    Manifest(std::string command, json parameters)
        : start_(std::chrono::steady_clock::now()), command_(std::move(command)), params_(std::move(parameters)) {
    }
    void add_seed(uint64_t s) {
        seeds_.push_back(s);
    }
    void set_trunc_dim(int d) {
        trunc_dim_ = d;
    }
    json to_json() const {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return json{{"schema", "qng.manifest/1"},
                    {"command", command_},
                    {"parameters", params_},
                    {"version", qng_version()},
                    {"seeds", seeds_},
                    {"wall_time_s", wall},
                    {"trunc_dim", trunc_dim_}};
    }

   private:
    std::chrono::steady_clock::time_point start_;
    std::string command_;
    json params_;
    std::vector<uint64_t> seeds_;
    int trunc_dim_ = 0;
};

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    std::ofstream f(p);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    f << text;
    if (!f) {
        throw std::runtime_error("write failed for " + path);
    }
}

void emit(const std::string &path, const std::string &schema, const Manifest &man, const json &result) {
    json doc{{"schema", schema}, {"manifest", man.to_json()}, {"result", result}};
    write_text(path, doc.dump(2) + "\n");
}

struct Common {
    std::string out;
    int trunc_dim = 0;
};

void configure(Context &c, const Common &common, Manifest &man) {
    if (const char *dir = std::getenv("QNG_CACHE_DIR")) {
        qng_context_set_cache_dir(c.ctx, dir);
    }
    int dim = 128;
    if (common.trunc_dim > 0) {
        if (qng_context_set_truncation(c.ctx, common.trunc_dim) != QNG_OK) {
            throw UsageError(c.error());
        }
        dim = common.trunc_dim;
    }
    man.set_trunc_dim(dim);
}

int fail_with(const Context &c, qng_status s, int code) {
    std::cerr << "error (" << status_key(s) << "): " << c.error() << "\n";
    return code;
}

// ---------------------------------------------------------------------------------------------

struct ThresholdsArgs {
    Common common;
    std::vector<std::string> pairs;
    std::vector<std::string> kinds;
};

int cmd_thresholds(const ThresholdsArgs &a) {
    if (a.pairs.empty()) {
        throw UsageError("at least one --pair is required");
    }
    std::vector<std::pair<int, int>> pairs;
    for (const auto &p : a.pairs) {
        pairs.push_back(parse_pair(p));
    }
    std::vector<qng_threshold_kind> kinds;
    for (const auto &k : a.kinds) {
        kinds.push_back(parse_kind(k));
    }
    if (kinds.empty()) {
        kinds = {QNG_KIND_CLASSICAL, QNG_KIND_GAUSSIAN_MIN, QNG_KIND_GAUSSIAN_INTRINSIC, QNG_KIND_GENUINE};
    }
    json params{{"pairs", a.pairs}, {"kinds", json::array()}, {"trunc_dim", a.common.trunc_dim}};
    for (auto k : kinds) {
        params["kinds"].push_back(kind_key(k));
    }
    Manifest man("thresholds", params);
    Context c;
    configure(c, a.common, man);

    json table = json::object();
    bool all_ok = true;
    for (const auto &[m, n] : pairs) {
        const std::string key = std::to_string(m) + "," + std::to_string(n);
        json row = json::object();
        for (auto k : kinds) {
            char *s = nullptr;
            const qng_status st = qng_threshold_json(c.ctx, k, m, n, &s);
            if (st == QNG_ERR_INVALID_ARGUMENT) {
                throw UsageError(c.error());
            }
            if (st == QNG_OK) {
                json entry = take_json(s);
                entry["status"] = "ok";
                row[kind_key(k)] = entry;
            } else {
                all_ok = false;
                std::cerr << "pair (" << key << ") " << kind_key(k) << ": " << c.error() << "\n";
                row[kind_key(k)] = {{"status", status_key(st)}, {"error", c.error()}};
            }
        }
        table[key] = row;
    }
    emit(a.common.out, "qng.thresholds/1", man, table);
    return all_ok ? kOk : kFailed;
}

struct CertifyArgs {
    Common common;
    std::string pair;
    double measured = 0.0;
    double uncertainty = 0.0;
    std::string kind = "genuine";
};

int cmd_certify(const CertifyArgs &a) {
    const auto [m, n] = parse_pair(a.pair);
    const qng_threshold_kind depth_kind = parse_kind(a.kind);
    Manifest man("certify", {{"pair", a.pair},
                             {"measured", a.measured},
                             {"uncertainty", a.uncertainty},
                             {"kind", kind_key(depth_kind)},
                             {"trunc_dim", a.common.trunc_dim}});
    Context c;
    configure(c, a.common, man);
    char *s = nullptr;
    int any = 0;
    qng_status st = qng_certify_json(c.ctx, m, n, a.measured, a.uncertainty, &s, &any);
    if (st == QNG_ERR_INVALID_ARGUMENT) {
        return fail_with(c, st, kUsage);
    }
    if (st != QNG_OK) {
        return fail_with(c, st, kFailed);
    }
    json report = take_json(s);
    json depth = nullptr;
    if (a.measured > 0.0) {
        st = qng_depth_json(c.ctx, a.measured, m, n, depth_kind, &s);
        if (st != QNG_OK) {
            return fail_with(c, st, kFailed);
        }
        depth = take_json(s);
    }
    report["depth"] = depth;
    emit(a.common.out, "qng.certify/1", man, report);
    return any ? kOk : kNoVerdict;
}

struct DepthArgs {
    Common common;
    std::string pair;
    double measured = 1.0;
    std::string kind = "genuine";
};

int cmd_depth(const DepthArgs &a) {
    const auto [m, n] = parse_pair(a.pair);
    const qng_threshold_kind kind = parse_kind(a.kind);
    Manifest man("depth", {{"pair", a.pair},
                           {"measured", a.measured},
                           {"kind", kind_key(kind)},
                           {"trunc_dim", a.common.trunc_dim}});
    Context c;
    configure(c, a.common, man);
    char *s = nullptr;
    const qng_status st = qng_depth_json(c.ctx, a.measured, m, n, kind, &s);
    if (st == QNG_ERR_INVALID_ARGUMENT) {
        return fail_with(c, st, kUsage);
    }
    if (st != QNG_OK) {
        return fail_with(c, st, kFailed);
    }
    emit(a.common.out, "qng.depth/1", man, take_json(s));
    return kOk;
}

struct McArgs {
    Common common;
    std::string pair;
    std::string kind;
    long samples = 100000;
    uint64_t seed = 1;
};

int cmd_mc_verify(const McArgs &a) {
    const auto [m, n] = parse_pair(a.pair);
    const qng_threshold_kind kind = parse_kind(a.kind);
    Manifest man("mc-verify", {{"pair", a.pair},
                               {"kind", kind_key(kind)},
                               {"samples", a.samples},
                               {"seed", a.seed},
                               {"trunc_dim", a.common.trunc_dim}});
    man.add_seed(a.seed);
    Context c;
    configure(c, a.common, man);
    char *s = nullptr;
    long violations = 0;
    const qng_status st = qng_mc_verify_json(c.ctx, kind, m, n, a.samples, a.seed, &s, &violations);
    if (st == QNG_ERR_INVALID_ARGUMENT) {
        return fail_with(c, st, kUsage);
    }
    if (st != QNG_OK) {
        return fail_with(c, st, kFailed);
    }
    emit(a.common.out, "qng.mc-verify/1", man, take_json(s));
    if (violations > 0) {
        std::cerr << "soundness failure: " << violations << " samples exceed the threshold\n";
        return kViolations;
    }
    return kOk;
}

struct SimulateArgs {
    Common common;
    std::string config;
};

std::string fmt(double v) {
    std::ostringstream o;
    o << std::setprecision(12) << v;
    return o.str();
}

int cmd_simulate(const SimulateArgs &a) {
    if (a.common.out.empty() || a.common.out == "-") {
        throw UsageError("simulate needs --out <directory>");
    }
    std::ifstream f(a.config);
    if (!f) {
        throw UsageError("cannot read config " + a.config);
    }
    json cfg;
    try {
        cfg = json::parse(f);
    } catch (const json::parse_error &e) {
        throw UsageError("config " + a.config + " is not valid JSON: " + e.what());
    }
    if (a.common.trunc_dim > 0 && cfg.is_object()) {
        cfg["trunc_dim"] = a.common.trunc_dim;
    }
    Manifest man("simulate", {{"config_path", a.config}, {"config", cfg}, {"trunc_dim", a.common.trunc_dim}});
    Context c;
    if (const char *dir = std::getenv("QNG_CACHE_DIR")) {
        qng_context_set_cache_dir(c.ctx, dir);
    }
    char *s = nullptr;
    const qng_status st = qng_simulate_json(c.ctx, cfg.dump().c_str(), &s);
    if (st == QNG_ERR_CONFIG || st == QNG_ERR_INVALID_ARGUMENT) {
        return fail_with(c, st, kUsage);
    }
    if (st != QNG_OK) {
        return fail_with(c, st, kFailed);
    }
    json out = take_json(s);
    man.add_seed(out["config"]["seed"].get<uint64_t>());
    int dim = 0;
    for (const auto &r : out["results"]) {
        dim = std::max(dim, r["trunc_dim"].get<int>());
    }
    man.set_trunc_dim(dim);

    const fs::path dir(a.common.out);
    std::ostringstream depth_csv;
    depth_csv << "m,n,delay,contrast,contrast_err,depth,threshold,verdict\n";
    json summary = json::array();
    for (const auto &r : out["results"]) {
        const int m = r["pair"][0], n = r["pair"][1];
        std::ostringstream fr;
        fr << "delay,phase,pe,shots\n";
        json pts = json::array();
        for (const auto &p : r["points"]) {
            for (const auto &q : p["fringe"]) {
                fr << fmt(p["delay"]) << ',' << fmt(q["phase"]) << ',' << fmt(q["pe"]) << ','
                   << q["shots"].get<long>() << '\n';
            }
            depth_csv << m << ',' << n << ',' << fmt(p["delay"]) << ',' << fmt(p["contrast"]) << ','
                      << fmt(p["contrast_err"]) << ',' << (p["depth"].is_null() ? "" : fmt(p["depth"])) << ','
                      << fmt(r["threshold"]) << ',' << (p["verdict"].get<bool>() ? 1 : 0) << '\n';
            json q = p;
            q.erase("fringe");
            pts.push_back(q);
        }
        write_text((dir / ("fringes_" + std::to_string(m) + "_" + std::to_string(n) + ".csv")).string(), fr.str());
        json entry = r;
        entry["points"] = pts;
        summary.push_back(entry);
    }
    write_text((dir / "depth_vs_delay.csv").string(), depth_csv.str());
    write_text((dir / "manifest.json").string(), man.to_json().dump(2) + "\n");
    emit((dir / "summary.json").string(), "qng.simulate/1", man, {{"config", out["config"]}, {"pairs", summary}});
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Coherence thresholds, certification and Ramsey simulation for Fock superpositions"};
    app.set_version_flag("--version", std::string(qng_version()));
    app.require_subcommand(1);

    ThresholdsArgs th;
    CertifyArgs ce;
    DepthArgs de;
    McArgs mc;
    SimulateArgs si;

    auto add_common = [](CLI::App *sub, Common &c) {
        sub->add_option("--out", c.out, "output path (stdout if omitted)");
        sub->add_option("--trunc-dim", c.trunc_dim, "Fock truncation dimension")->check(CLI::Range(16, 512));
    };

    auto *s_th = app.add_subcommand("thresholds", "threshold table for pairs and kinds");
    s_th->add_option("--pair", th.pairs, "Fock pair m,n (repeatable)");
    s_th->add_option("--kind", th.kinds, "threshold kind (repeatable, default all)");
    add_common(s_th, th.common);

    auto *s_ce = app.add_subcommand("certify", "compare a measured coherence with every threshold");
    s_ce->add_option("--pair", ce.pair, "Fock pair m,n")->required();
    s_ce->add_option("--measured", ce.measured, "measured coherence")->required();
    s_ce->add_option("--uncertainty", ce.uncertainty, "one-sigma uncertainty");
    s_ce->add_option("--kind", ce.kind, "threshold kind used for the depth")->capture_default_str();
    add_common(s_ce, ce.common);

    auto *s_de = app.add_subcommand("depth", "dephasing depth of a coherence value");
    s_de->add_option("--pair", de.pair, "Fock pair m,n")->required();
    s_de->add_option("--measured", de.measured, "coherence value")->capture_default_str();
    s_de->add_option("--kind", de.kind, "threshold kind")->capture_default_str();
    add_common(s_de, de.common);

    auto *s_mc = app.add_subcommand("mc-verify", "Monte-Carlo check that no Gaussian sample beats a threshold");
    s_mc->add_option("--pair", mc.pair, "Fock pair m,n")->required();
    s_mc->add_option("--kind", mc.kind, "threshold kind")->required();
    s_mc->add_option("--samples", mc.samples, "sample count (>= 1000)")->capture_default_str();
    s_mc->add_option("--seed", mc.seed, "base seed")->capture_default_str();
    add_common(s_mc, mc.common);

    auto *s_si = app.add_subcommand("simulate", "Ramsey decay scan from a JSON scenario");
    s_si->add_option("--config", si.config, "scenario file")->required()->check(CLI::ExistingFile);
    add_common(s_si, si.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (s_th->parsed()) return cmd_thresholds(th);
        if (s_ce->parsed()) return cmd_certify(ce);
        if (s_de->parsed()) return cmd_depth(de);
        if (s_mc->parsed()) return cmd_mc_verify(mc);
        if (s_si->parsed()) return cmd_simulate(si);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
