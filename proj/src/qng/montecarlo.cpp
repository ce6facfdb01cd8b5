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


#include "qng/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "qng/error.hpp"

namespace qng {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const std::vector<double> kEdges = {-1.0, 0.0, 1e-3, 1e-2, 5e-2, 0.1, 0.25, 0.5, 1.0};

struct Partial {
    double max_observed = 0.0;
    long violations = 0;
    std::vector<long> counts;
};

class Sampler {
   public:
    Sampler(ThresholdKind kind, const FockPair &pair, const ThresholdResult &thr) : kind_(kind), pair_(pair), thr_(thr) {
    }

    double draw(std::mt19937_64 &rng) const {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const bool local = unit(rng) < 0.5;
        switch (kind_) {
            case ThresholdKind::Classical: {
                double a2;
                if (local) {
                    std::normal_distribution<double> jitter(0.0, 0.05);
                    a2 = std::max(0.0, thr_.argmax.alpha_mag * thr_.argmax.alpha_mag + jitter(rng));
                } else {
                    std::exponential_distribution<double> expo(1.0 / std::max(1.0, 0.5 * (pair_.m() + pair_.n())));
                    a2 = expo(rng);
                }
                const cplx alpha = std::polar(std::sqrt(a2), kTwoPi * unit(rng));
                return 2.0 * std::abs(coherent_amplitude(pair_.m(), alpha) * coherent_amplitude(pair_.n(), alpha));
            }
            case ThresholdKind::GaussianMin:
                return fock_gaussian_coherence(pair_, params(rng, local), 0);
            case ThresholdKind::GaussianIntrinsic: {
                int k;
                if (local) {
                    k = thr_.fock_index.value_or(0);
                } else {
                    std::uniform_int_distribution<int> idx(0, 10);
                    k = idx(rng);
                }
                return fock_gaussian_coherence(pair_, params(rng, local), k);
            }
            case ThresholdKind::GenuineN: {
                const int d = pair_.n();
                const GaussianParams g = params(rng, local);
                std::normal_distribution<double> normal(0.0, 1.0);
                Eigen::VectorXcd c(d);
                for (int i = 0; i < d; ++i) {
                    c[i] = cplx(normal(rng), normal(rng));
                }
                if (local && thr_.core) {
                    c = thr_.core->coeffs() + 0.05 * c / std::sqrt(2.0 * d);
                }
                c.normalize();
                const Eigen::MatrixXcd t = amplitude_table(g, pair_.n() + 1, d);
                const cplx um = t.row(pair_.m()) * c;
                const cplx un = t.row(pair_.n()) * c;
                return 2.0 * std::abs(um * std::conj(un));
            }
        }
        return 0.0;
    }

   private:
    GaussianParams params(std::mt19937_64 &rng, bool local) const {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        if (!local) {
            return GaussianParams::make(1.5 * unit(rng), kTwoPi * unit(rng), 4.0 * unit(rng), kTwoPi * unit(rng));
        }
        std::normal_distribution<double> jitter(0.0, 0.05);
        const GaussianParams &c = thr_.argmax;
        return GaussianParams::make(std::clamp(c.xi_mag + jitter(rng), 0.0, kMaxSqueeze), c.xi_phase + jitter(rng),
                                    std::clamp(c.alpha_mag + jitter(rng), 0.0, kMaxDisplacement),
                                    c.alpha_phase + jitter(rng));
    }

    ThresholdKind kind_;
    FockPair pair_;
    const ThresholdResult &thr_;
};

}  // namespace

McReport mc_verify(ThresholdKind kind, const FockPair &pair, long samples, uint64_t seed, ThresholdCache &cache,
                   int threads) {
    require(samples >= 1000, "Monte-Carlo verification needs at least 1000 samples");
    require(threads >= 0, "thread count must be non-negative");
    if (kind != ThresholdKind::Classical && pair.n() > 10) {
        fail(ErrorCode::Range, "Monte-Carlo verification supports max(m,n) <= 10");
    }
    const ThresholdResult thr = cache.get(kind, pair);
    const Sampler sampler(kind, pair, thr);
    const long n_parts = (samples + kMcPartition - 1) / kMcPartition;
    std::vector<Partial> parts(n_parts);

    std::atomic<long> next{0};
    auto worker = [&]() {
        while (true) {
            const long p = next.fetch_add(1);
            if (p >= n_parts) {
                return;
            }
            std::mt19937_64 rng(derive_seed(seed, static_cast<uint64_t>(p)));
            const long begin = p * kMcPartition;
            const long end = std::min(samples, begin + kMcPartition);
            Partial &out = parts[p];
            out.counts.assign(kEdges.size() - 1, 0);
            for (long s = begin; s < end; ++s) {
                const double c = sampler.draw(rng);
                out.max_observed = std::max(out.max_observed, c);
                const double margin = thr.value - c;
                if (c > thr.value + kMcSlack) {
                    ++out.violations;
                }
                const auto it = std::upper_bound(kEdges.begin(), kEdges.end(), margin);
                const long b = std::clamp<long>(it - kEdges.begin() - 1, 0, static_cast<long>(kEdges.size()) - 2);
                ++out.counts[b];
            }
        }
    };
    int n_threads = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n_threads = static_cast<int>(std::min<long>(n_threads, n_parts));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }

    McReport rep{kind, pair, samples, seed, thr.value, 0.0, 0, kMcSlack, 0.0, {}};
    std::vector<long> counts(kEdges.size() - 1, 0);
    for (const auto &p : parts) {
        rep.max_observed = std::max(rep.max_observed, p.max_observed);
        rep.violations += p.violations;
        for (size_t b = 0; b < counts.size(); ++b) {
            counts[b] += p.counts[b];
        }
    }
    rep.closest_margin = thr.value - rep.max_observed;
    for (size_t b = 0; b < counts.size(); ++b) {
        rep.histogram.push_back({kEdges[b], kEdges[b + 1], counts[b]});
    }
    return rep;
}

}  // namespace qng
