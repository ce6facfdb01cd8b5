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


#include "qng/channels.hpp"

#include <algorithm>
#include <cmath>

#include "qng/error.hpp"

namespace qng {

namespace {

Eigen::MatrixXcd dephase_block(Eigen::MatrixXcd m, double gamma) {
    const Eigen::Index n = m.rows();
    std::vector<double> factor(n);
    for (Eigen::Index d = 0; d < n; ++d) {
        factor[d] = std::exp(-0.5 * gamma * static_cast<double>(d * d));
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(j, k) *= factor[std::abs(j - k)];
        }
    }
    return m;
}

}  // namespace

DensityMatrix dephase(const DensityMatrix &rho, const DephasingParams &p) {
    require(std::isfinite(p.gamma) && p.gamma >= 0.0, "dephasing variance must be non-negative");
    return DensityMatrix(dephase_block(rho.matrix(), p.gamma));
}

Eigen::MatrixXcd dephase_joint(const Eigen::MatrixXcd &rho, int levels, double gamma) {
    require(levels > 0 && rho.rows() % levels == 0 && rho.rows() == rho.cols(), "joint matrix shape mismatch");
    require(std::isfinite(gamma) && gamma >= 0.0, "dephasing variance must be non-negative");
    const Eigen::Index dim = rho.rows() / levels;
    Eigen::MatrixXcd out = rho;
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            out.block(a * dim, b * dim, dim, dim) = dephase_block(rho.block(a * dim, b * dim, dim, dim), gamma);
        }
    }
    return out;
}

HeatingPropagator::HeatingPropagator(int dim, double rate, double duration) : dim_(dim) {
    require(dim >= 2, "heating propagator needs dim >= 2");
    require(std::isfinite(rate) && rate >= 0.0 && std::isfinite(duration) && duration >= 0.0,
            "heating rate and duration must be non-negative");
    const double kt = rate * duration;
    // <a a^dag> on the truncated space: the top level has no partner above it.
    auto aad = [dim](int i) { return i + 1 < dim ? static_cast<double>(i + 1) : 0.0; };
    bands_.resize(dim);
    for (int d = 0; d < dim; ++d) {
        const int len = dim - d;
        if (kt == 0.0) {
            bands_[d] = Eigen::MatrixXd::Identity(len, len);
            continue;
        }
        Eigen::VectorXd diag(len);
        Eigen::VectorXd off(std::max(len - 1, 1));
        for (int k = 0; k < len; ++k) {
            const int j = k + d;
            diag[k] = -0.5 * kt * (j + k + aad(j) + aad(k));
        }
        for (int k = 0; k + 1 < len; ++k) {
            off[k] = kt * std::sqrt(static_cast<double>(k + 1) * (k + 1 + d));
        }
        if (len == 1) {
            bands_[d] = Eigen::MatrixXd::Constant(1, 1, std::exp(diag[0]));
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, off.head(len - 1));
        const Eigen::MatrixXd &v = es.eigenvectors();
        bands_[d] = v * es.eigenvalues().array().exp().matrix().asDiagonal() * v.transpose();
    }
}

Eigen::MatrixXcd HeatingPropagator::apply(const Eigen::MatrixXcd &block) const {
    require(block.rows() == dim_ && block.cols() == dim_, "heating propagator dimension mismatch");
    Eigen::MatrixXcd out(dim_, dim_);
    for (int d = 0; d < dim_; ++d) {
        const int len = dim_ - d;
        Eigen::VectorXcd lower(len);
        Eigen::VectorXcd upper(len);
        for (int k = 0; k < len; ++k) {
            lower[k] = block(k + d, k);
            upper[k] = block(k, k + d);
        }
        lower = bands_[d] * lower;
        upper = bands_[d] * upper;
        for (int k = 0; k < len; ++k) {
            out(k + d, k) = lower[k];
            out(k, k + d) = upper[k];
        }
    }
    return out;
}

Eigen::MatrixXcd HeatingPropagator::apply_joint(const Eigen::MatrixXcd &rho, int levels) const {
    require(levels > 0 && rho.rows() == levels * dim_ && rho.cols() == levels * dim_, "joint matrix shape mismatch");
    Eigen::MatrixXcd out(rho.rows(), rho.cols());
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            out.block(a * dim_, b * dim_, dim_, dim_) = apply(rho.block(a * dim_, b * dim_, dim_, dim_));
        }
    }
    return out;
}

double tail_population(const DensityMatrix &rho) {
    double tail = 0.0;
    for (int k = std::max(0, rho.dim() - 8); k < rho.dim(); ++k) {
        tail += rho.population(k);
    }
    return tail;
}

DensityMatrix thermalize(const DensityMatrix &rho, const HeatingParams &h) {
    if (h.duration == 0.0 || h.rate == 0.0) {
        require(h.rate >= 0.0 && h.duration >= 0.0, "heating rate and duration must be non-negative");
        return rho;
    }
    HeatingPropagator prop(rho.dim(), h.rate, h.duration);
    Eigen::MatrixXcd m = prop.apply(rho.matrix());
    m = 0.5 * (m + m.adjoint()).eval();
    DensityMatrix out(std::move(m));
    if (tail_population(out) > 1e-6) {
        fail(ErrorCode::Truncation, "heating pushed population above 1e-6 into the last 8 Fock levels; raise the "
                                    "truncation dimension");
    }
    return out;
}

DepthResult depth(double measured, const FockPair &pair, ThresholdKind kind, ThresholdCache &cache) {
    const double thr = cache.get(kind, pair).value;
    const double d = depth_from_threshold(measured, thr, pair);
    return DepthResult{pair, d, kind, thr, measured, d > 0.0};
}

std::vector<ThermalPoint> thermal_depth_limit(const FockPair &pair, double rate, const std::vector<double> &times,
                                              ThresholdKind kind, ThresholdCache &cache, int dim) {
    require(std::is_sorted(times.begin(), times.end()), "times must be sorted ascending");
    require(times.empty() || times.front() >= 0.0, "times must be non-negative");
    if (dim <= 0) {
        dim = std::max(32, pair.n() + 24);
    }
    const DensityMatrix ideal = DensityMatrix::from_pure(fock_superposition(pair, 0.0, dim));
    const double thr = cache.get(kind, pair).value;
    std::vector<ThermalPoint> out;
    for (double t : times) {
        const DensityMatrix rho = thermalize(ideal, {rate, t});
        const double c = coherence_quantifier(rho, pair);
        out.push_back({t, c, depth_from_threshold(c, thr, pair)});
    }
    return out;
}

}  // namespace qng
