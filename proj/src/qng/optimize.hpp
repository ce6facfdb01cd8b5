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


#ifndef QNG_OPTIMIZE_HPP
#define QNG_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace qng {

struct Bounds {
    double lo;
    double hi;
};

struct SearchSpec {
    std::vector<Bounds> bounds;
    int grid_density = 12;
    int n_starts = 16;
    double tol = 1e-9;
    // Points appended to the grid before the top starts are picked.
    std::vector<std::vector<double>> extra_seeds;
    int max_evals_per_start = 4000;

    void validate() const;
};

struct StartRecord {
    std::vector<double> seed;
    double seed_value = 0.0;
    std::vector<double> argmax;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct SearchTrace {
    int grid_points = 0;
    std::vector<StartRecord> starts;
    // Best two starts agree within tol.
    bool converged = false;
};

struct SearchResult {
    std::vector<double> argmax;
    double value = 0.0;
    SearchTrace trace;
};

using Objective = std::function<double(const std::vector<double> &)>;

/// Grid seeding, then bounded Nelder-Mead from the best grid points. Throws NotConverged
/// (message carries a trace summary) only if no start meets its tolerance.
SearchResult maximize(const Objective &objective, const SearchSpec &spec);

/// splitmix64 step; used to derive independent stream seeds from (base, index).
uint64_t derive_seed(uint64_t base, uint64_t index);

}  // namespace qng

#endif
