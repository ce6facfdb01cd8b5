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


#include "qng/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qng/error.hpp"

namespace qng {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

std::vector<double> clamp_to(const std::vector<Bounds> &b, std::vector<double> x) {
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = std::clamp(x[i], b[i].lo, b[i].hi);
    }
    return x;
}

class Evaluator {
   public:
    Evaluator(const Objective &f, const std::vector<Bounds> &b) : f_(f), b_(b) {
    }
    Vertex operator()(std::vector<double> x) {
        x = clamp_to(b_, std::move(x));
        ++count;
        double v = f_(x);
        if (!std::isfinite(v)) {
            v = -std::numeric_limits<double>::infinity();
        }
        return {std::move(x), v};
    }
    int count = 0;

   private:
    const Objective &f_;
    const std::vector<Bounds> &b_;
};

// Maximizes with a simplex anchored at `start`. Returns (best, converged).
std::pair<Vertex, bool> nelder_mead(Evaluator &eval, const std::vector<Bounds> &b, const Vertex &start, double tol,
                                    int budget) {
    const size_t dim = start.x.size();
    std::vector<Vertex> s;
    s.push_back(start);
    for (size_t i = 0; i < dim; ++i) {
        std::vector<double> x = start.x;
        const double step = 0.1 * (b[i].hi - b[i].lo);
        x[i] += (x[i] + step <= b[i].hi) ? step : -step;
        s.push_back(eval(x));
    }
    double xtol = 0.0;
    for (const auto &bd : b) {
        xtol = std::max(xtol, 1e-9 * (bd.hi - bd.lo));
    }
    const int limit = eval.count + budget;
    auto by_value = [](const Vertex &a, const Vertex &c) { return a.f > c.f; };
    while (true) {
        std::sort(s.begin(), s.end(), by_value);
        double spread = s.front().f - s.back().f;
        double size = 0.0;
        for (size_t k = 1; k <= dim; ++k) {
            for (size_t i = 0; i < dim; ++i) {
                size = std::max(size, std::abs(s[k].x[i] - s[0].x[i]));
            }
        }
        if (spread <= tol && size <= xtol) {
            return {s.front(), true};
        }
        if (eval.count >= limit) {
            return {s.front(), false};
        }
        std::vector<double> centroid(dim, 0.0);
        for (size_t k = 0; k < dim; ++k) {
            for (size_t i = 0; i < dim; ++i) {
                centroid[i] += s[k].x[i] / dim;
            }
        }
        auto along = [&](double t) {
            std::vector<double> x(dim);
            for (size_t i = 0; i < dim; ++i) {
                x[i] = centroid[i] + t * (s.back().x[i] - centroid[i]);
            }
            return eval(x);
        };
        Vertex refl = along(-1.0);
        if (refl.f > s.front().f) {
            Vertex exp = along(-2.0);
            s.back() = exp.f > refl.f ? exp : refl;
        } else if (refl.f > s[dim - 1].f) {
            s.back() = refl;
        } else {
            Vertex con = refl.f > s.back().f ? along(-0.5) : along(0.5);
            if (con.f > std::max(refl.f, s.back().f)) {
                s.back() = con;
            } else if (refl.f > s.back().f) {
                s.back() = refl;
            } else {
                for (size_t k = 1; k <= dim; ++k) {
                    std::vector<double> x(dim);
                    for (size_t i = 0; i < dim; ++i) {
                        x[i] = s[0].x[i] + 0.5 * (s[k].x[i] - s[0].x[i]);
                    }
                    s[k] = eval(x);
                }
            }
        }
    }
}

std::string summarize(const SearchTrace &t) {
    std::ostringstream os;
    os << "grid=" << t.grid_points << " starts=" << t.starts.size();
    for (const auto &s : t.starts) {
        os << " [" << s.value << (s.converged ? " ok" : " stalled") << " evals=" << s.evaluations << "]";
    }
    return os.str();
}

}  // namespace

void SearchSpec::validate() const {
    require(!bounds.empty(), "search needs at least one axis");
    for (const auto &b : bounds) {
        require(std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo < b.hi, "search bounds need lo < hi");
    }
    require(grid_density >= 2, "grid density must be at least 2");
    require(n_starts >= 8, "search needs at least 8 starts");
    require(tol > 0.0 && tol <= 1e-6, "search tolerance must be in (0, 1e-6]");
    require(max_evals_per_start > 0, "evaluation budget must be positive");
    for (const auto &x : extra_seeds) {
        require(x.size() == bounds.size(), "extra seed has the wrong dimension");
    }
}

SearchResult maximize(const Objective &objective, const SearchSpec &spec) {
    spec.validate();
    const size_t dim = spec.bounds.size();
    Evaluator eval(objective, spec.bounds);

    std::vector<Vertex> seeds;
    size_t total = 1;
    for (size_t i = 0; i < dim; ++i) {
        total *= static_cast<size_t>(spec.grid_density);
    }
    seeds.reserve(total + spec.extra_seeds.size());
    for (size_t p = 0; p < total; ++p) {
        std::vector<double> x(dim);
        size_t rem = p;
        for (size_t i = 0; i < dim; ++i) {
            const int k = static_cast<int>(rem % spec.grid_density);
            rem /= spec.grid_density;
            const auto &b = spec.bounds[i];
            x[i] = b.lo + (b.hi - b.lo) * k / (spec.grid_density - 1);
        }
        seeds.push_back(eval(std::move(x)));
    }
    for (const auto &x : spec.extra_seeds) {
        seeds.push_back(eval(x));
    }

    SearchTrace trace;
    trace.grid_points = static_cast<int>(seeds.size());
    const size_t n_starts = std::min(seeds.size(), static_cast<size_t>(spec.n_starts));
    std::partial_sort(seeds.begin(), seeds.begin() + n_starts, seeds.end(),
                      [](const Vertex &a, const Vertex &b) { return a.f > b.f; });

    Vertex best = seeds.front();
    bool any_converged = false;
    for (size_t k = 0; k < n_starts; ++k) {
        const int before = eval.count;
        auto [v, ok] = nelder_mead(eval, spec.bounds, seeds[k], spec.tol, spec.max_evals_per_start);
        if (ok) {
            // One restart from the polished point guards against a collapsed simplex.
            auto [v2, ok2] = nelder_mead(eval, spec.bounds, v, spec.tol, spec.max_evals_per_start);
            if (v2.f >= v.f) {
                v = v2;
            }
            ok = ok2;
        }
        StartRecord rec;
        rec.seed = seeds[k].x;
        rec.seed_value = seeds[k].f;
        rec.argmax = v.x;
        rec.value = v.f;
        rec.evaluations = eval.count - before;
        rec.converged = ok;
        trace.starts.push_back(std::move(rec));
        any_converged = any_converged || ok;
        if (v.f > best.f) {
            best = v;
        }
    }

    std::vector<double> values;
    for (const auto &s : trace.starts) {
        values.push_back(s.value);
    }
    std::sort(values.rbegin(), values.rend());
    trace.converged = values.size() >= 2 && values[0] - values[1] <= spec.tol;

    if (!any_converged) {
        fail(ErrorCode::NotConverged, "no optimizer start converged: " + summarize(trace));
    }
    SearchResult out;
    out.argmax = best.x;
    out.value = objective(best.x);
    out.trace = std::move(trace);
    return out;
}

uint64_t derive_seed(uint64_t base, uint64_t index) {
    uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace qng
