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


#include "qng/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "qng/error.hpp"
#include "qng/json_io.hpp"

namespace qng {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInitialRBound = 1.5;
constexpr double kInitialAlphaBound = 4.0;

GaussianParams params_of(const std::vector<double> &x) {
    return GaussianParams::make(x[0], 0.0, x[1], x[2]);
}

using GaussianObjective = std::function<double(const GaussianParams &)>;

// Three-axis search (|xi|, |alpha|, alpha phase) with the squeeze phase fixed: a phase-space
// rotation moves both phases together and leaves every |<m|rho|n>| unchanged.
SearchResult search_gaussian(const GaussianObjective &f, const ThresholdOptions &opt, ThresholdDiagnostics &diag,
                             std::vector<std::vector<double>> seeds = {}) {
    double r_hi = kInitialRBound;
    double a_hi = kInitialAlphaBound;
    while (true) {
        SearchSpec spec;
        spec.bounds = {{0.0, r_hi}, {0.0, a_hi}, {0.0, kTwoPi}};
        spec.grid_density = opt.grid_density;
        spec.n_starts = opt.n_starts;
        for (auto s : seeds) {
            s[0] = std::clamp(s[0], 0.0, r_hi);
            s[1] = std::clamp(s[1], 0.0, a_hi);
            s[2] = wrap_phase(s[2]);
            spec.extra_seeds.push_back(s);
        }
        SearchResult res = maximize([&](const std::vector<double> &x) { return f(params_of(x)); }, spec);
        const bool hit_r = res.argmax[0] >= r_hi * (1.0 - 1e-6) && r_hi < kMaxSqueeze;
        const bool hit_a = res.argmax[1] >= a_hi * (1.0 - 1e-6) && a_hi < kMaxDisplacement;
        if (!hit_r && !hit_a) {
            diag.grid_points = res.trace.grid_points;
            diag.start_values.clear();
            diag.start_converged.clear();
            for (const auto &s : res.trace.starts) {
                diag.start_values.push_back(s.value);
                diag.start_converged.push_back(s.converged);
            }
            diag.converged = res.trace.converged;
            diag.final_r_bound = r_hi;
            diag.final_alpha_bound = a_hi;
            return res;
        }
        if (hit_r) {
            r_hi = std::min(kMaxSqueeze, 2.0 * r_hi);
        }
        if (hit_a) {
            a_hi = std::min(kMaxDisplacement, 2.0 * a_hi);
        }
        ++diag.bound_retries;
        seeds.push_back(res.argmax);
    }
}

Eigen::VectorXcd core_vector(const ThresholdResult &r) {
    if (r.core) {
        return r.core->coeffs();
    }
    const int k = r.fock_index.value_or(0);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(k + 1);
    c[k] = 1.0;
    return c;
}

// Rebuilds the optimum with the matrix-exponential construction at N and 2N.
void verify_truncation(ThresholdResult &r, const ThresholdOptions &opt) {
    const Eigen::VectorXcd c = core_vector(r);
    const Eigen::VectorXcd at_n = apply_gaussian(r.argmax, c, opt.truncation);
    const Eigen::VectorXcd at_2n = apply_gaussian(r.argmax, c, 2 * opt.truncation);
    PureState guard(at_n);
    const double c_n = coherence_quantifier(guard.amplitudes(), r.pair);
    const double c_2n = coherence_quantifier(at_2n, r.pair);
    r.diagnostics.truncation_delta = std::max(std::abs(c_n - r.value), std::abs(c_2n - c_n));
    if (r.diagnostics.truncation_delta > 1e-6) {
        fail(ErrorCode::Truncation, "threshold " + std::string(kind_name(r.kind)) + " at (" + r.pair.str() +
                                        ") changes by " + std::to_string(r.diagnostics.truncation_delta) +
                                        " between truncation N and 2N");
    }
}

void require_max_index(const FockPair &pair, int cap) {
    if (pair.n() > cap) {
        fail(ErrorCode::Range, "pair (" + pair.str() + ") outside supported range max(m,n) <= " + std::to_string(cap));
    }
}

}  // namespace

const char *kind_name(ThresholdKind kind) {
    switch (kind) {
        case ThresholdKind::Classical:
            return "classical";
        case ThresholdKind::GaussianMin:
            return "gaussian-min";
        case ThresholdKind::GaussianIntrinsic:
            return "gaussian-intrinsic";
        case ThresholdKind::GenuineN:
            return "genuine";
    }
    return "unknown";
}

ThresholdKind parse_kind(const std::string &text) {
    for (ThresholdKind k : kAllKinds) {
        if (text == kind_name(k)) {
            return k;
        }
    }
    if (text == "intrinsic") {
        return ThresholdKind::GaussianIntrinsic;
    }
    if (text == "min") {
        return ThresholdKind::GaussianMin;
    }
    fail(ErrorCode::InvalidArgument,
         "unknown threshold kind '" + text + "' (classical, gaussian-min, gaussian-intrinsic, genuine)");
}

Eigen::VectorXcd ThresholdResult::state(int dim) const {
    const Eigen::VectorXcd c = core_vector(*this);
    return amplitude_table(argmax, dim, static_cast<int>(c.size())) * c;
}

double classical_closed_form(const FockPair &pair) {
    const int m = pair.m();
    const int n = pair.n();
    require(m + n <= 40, "classical threshold supports m + n <= 40");
    const double s = 0.5 * (m + n);
    const double log_value = std::log(2.0) + s * std::log(s) - s - 0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0));
    return std::exp(log_value);
}

ThresholdResult classical_threshold(const FockPair &pair) {
    const double value = classical_closed_form(pair);
    ThresholdResult r{ThresholdKind::Classical,
                      pair,
                      value,
                      GaussianParams::make(0.0, 0.0, std::sqrt(0.5 * (pair.m() + pair.n())), 0.0),
                      std::nullopt,
                      std::nullopt,
                      {}};
    return r;
}

ThresholdResult classical_threshold_search(const FockPair &pair, const ThresholdOptions &opt) {
    require(pair.m() + pair.n() <= 40, "classical threshold supports m + n <= 40");
    SearchSpec spec;
    spec.bounds = {{0.0, kMaxDisplacement}};
    spec.grid_density = std::max(opt.grid_density, 64);
    spec.n_starts = opt.n_starts;
    auto f = [&](const std::vector<double> &x) {
        return 2.0 * std::abs(coherent_amplitude(pair.m(), x[0]) * coherent_amplitude(pair.n(), x[0]));
    };
    SearchResult res = maximize(f, spec);
    ThresholdResult r{ThresholdKind::Classical, pair, res.value, GaussianParams::make(0.0, 0.0, res.argmax[0], 0.0),
                      std::nullopt, std::nullopt, {}};
    r.diagnostics.grid_points = res.trace.grid_points;
    for (const auto &s : res.trace.starts) {
        r.diagnostics.start_values.push_back(s.value);
        r.diagnostics.start_converged.push_back(s.converged);
    }
    r.diagnostics.converged = res.trace.converged;
    return r;
}

double fock_gaussian_coherence(const FockPair &pair, const GaussianParams &g, int k) {
    const Eigen::MatrixXcd t = amplitude_table(g, pair.n() + 1, k + 1);
    return 2.0 * std::abs(t(pair.m(), k) * t(pair.n(), k));
}

ThresholdResult gaussian_min_threshold(const FockPair &pair, const ThresholdOptions &opt) {
    require_max_index(pair, 10);
    const int m = pair.m();
    const int n = pair.n();
    ThresholdDiagnostics diag;
    auto f = [&](const GaussianParams &g) { return fock_gaussian_coherence(pair, g, 0); };

    // Reduced search: |alpha|^2 fixed by stationarity in terms of (|xi|, phi).
    std::vector<std::vector<double>> seeds;
    auto constrained = [&](double r, double phi) {
        const double num = (1.0 + m + n) / std::cosh(2.0 * r) - 1.0;
        const double den = 2.0 * (1.0 - std::cos(2.0 * phi) * std::tanh(2.0 * r));
        const double a2 = den > 1e-12 ? num / den : 0.0;
        return std::clamp(std::sqrt(std::max(a2, 0.0)), 0.0, kInitialAlphaBound);
    };
    try {
        SearchSpec spec;
        spec.bounds = {{0.0, kInitialRBound}, {0.0, kTwoPi}};
        spec.grid_density = 2 * opt.grid_density;
        spec.n_starts = opt.n_starts;
        SearchResult reduced = maximize(
            [&](const std::vector<double> &x) {
                return f(GaussianParams::make(x[0], 0.0, constrained(x[0], x[1]), x[1]));
            },
            spec);
        seeds.push_back({reduced.argmax[0], constrained(reduced.argmax[0], reduced.argmax[1]), reduced.argmax[1]});
    } catch (const Error &e) {
        if (e.code() != ErrorCode::NotConverged) {
            throw;
        }
    }
    SearchResult res = search_gaussian(f, opt, diag, seeds);
    ThresholdResult r{ThresholdKind::GaussianMin, pair, res.value, params_of(res.argmax), std::nullopt, std::nullopt,
                      diag};
    if (opt.verify_truncation) {
        verify_truncation(r, opt);
    }
    return r;
}

ThresholdResult intrinsic_threshold(const FockPair &pair, const ThresholdOptions &opt) {
    require_max_index(pair, 10);
    require(opt.max_fock >= 0 && opt.max_fock <= 12, "intrinsic threshold needs 0 <= max_fock <= 12");
    std::optional<ThresholdResult> best;
    for (int k = 0; k <= opt.max_fock; ++k) {
        ThresholdDiagnostics diag;
        SearchResult res = search_gaussian([&](const GaussianParams &g) { return fock_gaussian_coherence(pair, g, k); },
                                           opt, diag);
        if (!best || res.value > best->value) {
            best = ThresholdResult{ThresholdKind::GaussianIntrinsic, pair, res.value, params_of(res.argmax), k,
                                   std::nullopt, diag};
        }
    }
    if (opt.verify_truncation) {
        verify_truncation(*best, opt);
    }
    return *best;
}

Eigen::MatrixXcd genuine_state_matrix(const FockPair &pair, const GaussianParams &g, int d, double theta) {
    const Eigen::MatrixXcd t = amplitude_table(g, pair.n() + 1, d);
    const Eigen::VectorXcd x = t.row(pair.m()).adjoint();
    const Eigen::VectorXcd y = t.row(pair.n()).adjoint();
    const cplx ph = std::polar(1.0, theta);
    Eigen::MatrixXcd h = ph * x * y.adjoint();
    return h + h.adjoint().eval();
}

Eigen::MatrixXcd genuine_paper_matrix(const FockPair &pair, const GaussianParams &g, int d, double theta) {
    const Eigen::MatrixXcd t = amplitude_table(g, d, pair.n() + 1);
    const Eigen::VectorXcd p = t.col(pair.m());
    const Eigen::VectorXcd q = t.col(pair.n());
    const cplx ph = std::polar(1.0, theta);
    Eigen::MatrixXcd h = ph * p * q.adjoint();
    return h + h.adjoint().eval();
}

double genuine_optimal_theta(const FockPair &pair, const GaussianParams &g, int d) {
    const Eigen::MatrixXcd t = amplitude_table(g, pair.n() + 1, d);
    const Eigen::VectorXcd x = t.row(pair.m()).adjoint();
    const Eigen::VectorXcd y = t.row(pair.n()).adjoint();
    return wrap_phase(std::arg(x.dot(y)));
}

double genuine_objective(const FockPair &pair, const GaussianParams &g, int d, Eigen::VectorXcd *core) {
    const Eigen::MatrixXcd t = amplitude_table(g, pair.n() + 1, d);
    const Eigen::VectorXcd x = t.row(pair.m()).adjoint();
    const Eigen::VectorXcd y = t.row(pair.n()).adjoint();
    const double value = std::abs(x.dot(y)) + x.norm() * y.norm();
    if (core) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            genuine_state_matrix(pair, g, d, genuine_optimal_theta(pair, g, d)));
        *core = es.eigenvectors().col(d - 1).normalized();
    }
    return value;
}

ThresholdResult genuine_threshold(const FockPair &pair, const ThresholdOptions &opt) {
    require_max_index(pair, 10);
    const int d = pair.n();
    ThresholdDiagnostics diag;
    SearchResult res =
        search_gaussian([&](const GaussianParams &g) { return genuine_objective(pair, g, d); }, opt, diag);
    const GaussianParams g = params_of(res.argmax);
    Eigen::VectorXcd core;
    const double value = genuine_objective(pair, g, d, &core);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(genuine_state_matrix(pair, g, d, genuine_optimal_theta(pair, g, d)),
                                                       Eigen::EigenvaluesOnly);
    diag.eigen_delta = std::abs(es.eigenvalues()[d - 1] - value);
    if (diag.eigen_delta > 1e-9) {
        fail(ErrorCode::NotConverged, "rank-2 eigenvalue disagrees with the dense eigensolver by " +
                                          std::to_string(diag.eigen_delta));
    }
    ThresholdResult r{ThresholdKind::GenuineN, pair, value, g, std::nullopt, CoreState(core), diag};
    if (opt.verify_truncation) {
        verify_truncation(r, opt);
    }
    return r;
}

ThresholdResult compute_threshold(ThresholdKind kind, const FockPair &pair, const ThresholdOptions &opt) {
    switch (kind) {
        case ThresholdKind::Classical:
            return classical_threshold(pair);
        case ThresholdKind::GaussianMin:
            return gaussian_min_threshold(pair, opt);
        case ThresholdKind::GaussianIntrinsic:
            return intrinsic_threshold(pair, opt);
        case ThresholdKind::GenuineN:
            return genuine_threshold(pair, opt);
    }
    fail(ErrorCode::InvalidArgument, "unknown threshold kind");
}

ThresholdCache::ThresholdCache(ThresholdOptions opt, std::string directory)
    : opt_(opt), dir_(std::move(directory)) {
    require(opt_.truncation >= 16, "truncation dimension must be at least 16");
    if (!dir_.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) {
            fail(ErrorCode::Io, "cannot create cache directory " + dir_ + ": " + ec.message());
        }
    }
}

std::string ThresholdCache::path_for(ThresholdKind kind, const FockPair &pair) const {
    return dir_ + "/" + kind_name(kind) + "_" + std::to_string(pair.m()) + "_" + std::to_string(pair.n()) + "_N" +
           std::to_string(opt_.truncation) + ".json";
}

std::optional<ThresholdResult> ThresholdCache::load(ThresholdKind kind, const FockPair &pair) const {
    if (dir_.empty()) {
        return std::nullopt;
    }
    std::ifstream in(path_for(kind, pair));
    if (!in) {
        return std::nullopt;
    }
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.value("version", "") != QNG_VERSION_STRING || j.value("truncation", 0) != opt_.truncation ||
            j.value("max_fock", -1) != opt_.max_fock) {
            return std::nullopt;
        }
        ThresholdResult r = threshold_from_json(j.at("result"));
        if (r.kind != kind || !(r.pair == pair)) {
            return std::nullopt;
        }
        return r;
    } catch (const std::exception &) {
        return std::nullopt;
    }
}

void ThresholdCache::store(const ThresholdResult &r) const {
    if (dir_.empty()) {
        return;
    }
    nlohmann::json j;
    j["version"] = QNG_VERSION_STRING;
    j["truncation"] = opt_.truncation;
    j["max_fock"] = opt_.max_fock;
    j["result"] = threshold_to_json(r);
    const std::string path = path_for(r.kind, r.pair);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            fail(ErrorCode::Io, "cannot write cache file " + tmp);
        }
        out << j.dump(2) << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        fail(ErrorCode::Io, "cannot move cache file into place: " + ec.message());
    }
}

ThresholdResult ThresholdCache::get(ThresholdKind kind, const FockPair &pair) {
    const auto key = std::make_tuple(static_cast<int>(kind), pair.m(), pair.n());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            return it->second;
        }
    }
    std::optional<ThresholdResult> r = load(kind, pair);
    bool fresh = false;
    if (!r) {
        r = compute_threshold(kind, pair, opt_);
        fresh = true;
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(key, *r);
    if (inserted && fresh) {
        ++computed_;
        store(*r);
    }
    return it->second;
}

size_t ThresholdCache::computed_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    return computed_;
}

double depth_from_threshold(double measured, double threshold, const FockPair &pair) {
    require(measured > 0.0 && measured <= 1.0 + 1e-12, "depth needs measured coherence in (0, 1]");
    require(threshold > 0.0, "depth needs a positive threshold");
    const double gap = pair.gap();
    return 2.0 / (gap * gap) * std::log(measured / threshold);
}

bool CertificationReport::any_verdict() const {
    return std::any_of(kinds.begin(), kinds.end(), [](const KindVerdict &k) { return k.verdict; });
}

const KindVerdict &CertificationReport::at(ThresholdKind kind) const {
    for (const auto &k : kinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    fail(ErrorCode::InvalidArgument, "kind missing from certification report");
}

CertificationReport certify(const FockPair &pair, double measured, double uncertainty, ThresholdCache &cache) {
    require(std::isfinite(measured) && measured >= 0.0 && measured <= 1.0, "measured coherence must lie in [0, 1]");
    require(std::isfinite(uncertainty) && uncertainty >= 0.0, "uncertainty must be non-negative");
    CertificationReport rep{pair, measured, uncertainty, {}};
    for (ThresholdKind kind : kAllKinds) {
        const double thr = cache.get(kind, pair).value;
        KindVerdict v{kind, thr, measured - thr, measured - thr > 0.0, std::abs(measured - thr) < uncertainty,
                      std::nullopt};
        if (measured > 0.0) {
            v.depth = depth_from_threshold(measured, thr, pair);
        }
        rep.kinds.push_back(v);
    }
    return rep;
}

}  // namespace qng
