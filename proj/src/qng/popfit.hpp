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


#ifndef QNG_POPFIT_HPP
#define QNG_POPFIT_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qng {

struct RabiModel {
    // rad/s
    double carrier_rabi;
    double eta;
    // rad/s
    double gamma0;
    double x_exp;

    /// Carrier 2 pi 34.8 kHz, eta 0.063, gamma0 2 pi 42 Hz, x 0.7.
    static RabiModel standard();
    double frequency(int n) const;
    double decay(int n) const;
};

/// P_g(t) = (1 + sum_n P(n) cos(Omega eta sqrt(n+1) t) exp(-gamma(n) t)) / 2.
std::vector<std::pair<double, double>> synth_signal(const Eigen::VectorXd &populations, const RabiModel &model,
                                                    const std::vector<double> &times);

struct PopFitResult {
    Eigen::VectorXd populations;
    double raw_sum;
    double residual_rms;
    double condition_number;
    // No oscillation information in the signal.
    bool degenerate;
};

/// Lawson-Hanson non-negative least squares, min ||A x - b|| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd &a, const Eigen::VectorXd &b, int max_iter = 0);

PopFitResult fit_populations(const std::vector<std::pair<double, double>> &signal, const RabiModel &model, int n_max);

}  // namespace qng

#endif
