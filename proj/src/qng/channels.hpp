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


#ifndef QNG_CHANNELS_HPP
#define QNG_CHANNELS_HPP

#include <vector>

#include "qng/fock.hpp"
#include "qng/thresholds.hpp"

namespace qng {

struct DephasingParams {
    // Accumulated phase variance.
    double gamma = 0.0;
};

struct HeatingParams {
    // Phonons per second.
    double rate = 0.0;
    // Seconds.
    double duration = 0.0;
};

struct DepthResult {
    FockPair pair;
    double depth;
    ThresholdKind threshold_kind;
    double threshold;
    double measured;
    bool certified;
};

/// rho_jk *= exp(-gamma (j-k)^2 / 2).
DensityMatrix dephase(const DensityMatrix &rho, const DephasingParams &p);
/// Same on every motional block of a (levels*dim)^2 spin-oscillator matrix.
Eigen::MatrixXcd dephase_joint(const Eigen::MatrixXcd &rho, int levels, double gamma);

/// Exact propagator of the equal-rate heating channel
///   d rho/dt = k D[a] rho + k D[a^dag] rho,  d<n>/dt = k,
/// with truncated ladder operators, which keeps the map trace preserving. Each diagonal band
/// rho_{k+d,k} evolves under its own real symmetric tridiagonal generator.
class HeatingPropagator {
   public:
    HeatingPropagator(int dim, double rate, double duration);
    /// Applies to one dim x dim motional block (need not be Hermitian).
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd &block) const;
    Eigen::MatrixXcd apply_joint(const Eigen::MatrixXcd &rho, int levels) const;
    int dim() const {
        return dim_;
    }

   private:
    int dim_;
    // bands_[d] maps band d (length dim-d) forward in time.
    std::vector<Eigen::MatrixXd> bands_;
};

/// Tail population in the last 8 levels above 1e-6 raises a truncation error.
DensityMatrix thermalize(const DensityMatrix &rho, const HeatingParams &h);
double tail_population(const DensityMatrix &rho);

DepthResult depth(double measured, const FockPair &pair, ThresholdKind kind, ThresholdCache &cache);

struct ThermalPoint {
    double time;
    double coherence;
    double depth;
};

/// Heats the ideal balanced superposition of the pair and reports coherence and depth per time.
std::vector<ThermalPoint> thermal_depth_limit(const FockPair &pair, double rate, const std::vector<double> &times,
                                              ThresholdKind kind, ThresholdCache &cache, int dim = 0);

}  // namespace qng

#endif
