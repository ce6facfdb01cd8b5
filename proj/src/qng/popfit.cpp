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


#include "qng/popfit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qng/error.hpp"

namespace qng {

RabiModel RabiModel::standard() {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return RabiModel{two_pi * 34.8e3, 0.063, two_pi * 42.0, 0.7};
}

double RabiModel::frequency(int n) const {
    return carrier_rabi * eta * std::sqrt(n + 1.0);
}

double RabiModel::decay(int n) const {
    return std::pow(n + 1.0, x_exp) * gamma0;
}

std::vector<std::pair<double, double>> synth_signal(const Eigen::VectorXd &populations, const RabiModel &model,
                                                    const std::vector<double> &times) {
    std::vector<std::pair<double, double>> out;
    for (double t : times) {
        double s = 0.0;
        for (Eigen::Index n = 0; n < populations.size(); ++n) {
            s += populations[n] * std::cos(model.frequency(n) * t) * std::exp(-model.decay(n) * t);
        }
        out.emplace_back(t, 0.5 * (1.0 + s));
    }
    return out;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd &a, const Eigen::VectorXd &b, int max_iter) {
    const Eigen::Index n = a.cols();
    require(a.rows() == b.size(), "NNLS shape mismatch");
    if (max_iter <= 0) {
        max_iter = 30 * static_cast<int>(n);
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive(n, false);
    const double tol = 10.0 * std::numeric_limits<double>::epsilon() * a.norm() * std::max<Eigen::Index>(a.rows(), n);

    auto solve_passive = [&](Eigen::VectorXd &z) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (passive[j]) {
                idx.push_back(j);
            }
        }
        z = Eigen::VectorXd::Zero(n);
        if (idx.empty()) {
            return;
        }
        Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
        for (size_t k = 0; k < idx.size(); ++k) {
            sub.col(k) = a.col(idx[k]);
        }
        const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
        for (size_t k = 0; k < idx.size(); ++k) {
            z[idx[k]] = zs[k];
        }
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        const Eigen::VectorXd w = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double wmax = tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!passive[j] && w[j] > wmax) {
                wmax = w[j];
                best = j;
            }
        }
        if (best < 0) {
            break;
        }
        passive[best] = true;
        Eigen::VectorXd z;
        while (true) {
            solve_passive(z);
            double step = 1.0;
            bool feasible = true;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[j] && z[j] <= 0.0) {
                    feasible = false;
                    step = std::min(step, x[j] / (x[j] - z[j]));
                }
            }
            if (feasible) {
                break;
            }
            x += step * (z - x);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[j] && std::abs(x[j]) <= tol) {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
        }
        x = z;
    }
    return x.cwiseMax(0.0);
}

PopFitResult fit_populations(const std::vector<std::pair<double, double>> &signal, const RabiModel &model, int n_max) {
    require(n_max >= 0 && n_max <= 40, "population fit supports 0 <= n_max <= 40");
    require(model.carrier_rabi > 0.0 && model.eta > 0.0 && model.gamma0 >= 0.0, "Rabi model needs positive rates");
    const size_t need = std::max<size_t>(4 * static_cast<size_t>(n_max), 4);
    if (signal.size() < need) {
        fail(ErrorCode::InvalidArgument,
             "population fit needs at least " + std::to_string(need) + " points, got " + std::to_string(signal.size()));
    }
    double t_lo = signal.front().first;
    double t_hi = signal.front().first;
    for (const auto &s : signal) {
        t_lo = std::min(t_lo, s.first);
        t_hi = std::max(t_hi, s.first);
    }
    const double period = 2.0 * std::numbers::pi / model.frequency(0);
    if (t_hi - t_lo < 2.0 * period) {
        fail(ErrorCode::InvalidArgument, "signal must span at least two sideband Rabi periods");
    }

    const Eigen::Index rows = static_cast<Eigen::Index>(signal.size());
    Eigen::MatrixXd x(rows, n_max + 1);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double t = signal[i].first;
        for (int n = 0; n <= n_max; ++n) {
            x(i, n) = std::cos(model.frequency(n) * t) * std::exp(-model.decay(n) * t);
        }
        y[i] = 2.0 * signal[i].second - 1.0;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const auto &sv = svd.singularValues();
    const double cond = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
    if (!(cond < 1e8)) {
        fail(ErrorCode::Conditioning, "design matrix condition number " + std::to_string(cond) +
                                          " too large; record a longer or denser signal");
    }

    PopFitResult r;
    r.condition_number = cond;
    r.degenerate = y.cwiseAbs().maxCoeff() < 1e-3;
    Eigen::VectorXd p = nnls(x, y);
    r.raw_sum = p.sum();
    r.residual_rms = std::sqrt((x * p - y).squaredNorm() / rows);
    if (r.degenerate || r.raw_sum <= 0.0) {
        r.populations = Eigen::VectorXd::Constant(n_max + 1, 1.0 / (n_max + 1));
        r.degenerate = true;
    } else {
        r.populations = p / r.raw_sum;
    }
    return r;
}

}  // namespace qng
