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


// Independent reference computations shared by the unit tests. Nothing here calls into the
// library's amplitude code.

#ifndef QNG_TEST_ORACLES_HPP
#define QNG_TEST_ORACLES_HPP

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;

inline Eigen::MatrixXcd annihilation(int dim) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return a;
}

// exp(G) with the truncated generator; accurate for low indices when dim is large.
inline Eigen::MatrixXcd displacement(cplx alpha, int dim) {
    const Eigen::MatrixXcd a = annihilation(dim);
    const Eigen::MatrixXcd g = alpha * a.adjoint() - std::conj(alpha) * a;
    return g.exp();
}

inline Eigen::MatrixXcd squeeze(cplx xi, int dim) {
    const Eigen::MatrixXcd a = annihilation(dim);
    const Eigen::MatrixXcd g = 0.5 * (std::conj(xi) * a * a - xi * a.adjoint() * a.adjoint());
    return g.exp();
}

inline Eigen::MatrixXcd gaussian(cplx xi, cplx alpha, int dim) {
    return squeeze(xi, dim) * displacement(alpha, dim);
}

// Poisson-weighted coherent amplitude, by direct product (no logs).
inline cplx coherent(int n, cplx alpha) {
    cplx v = std::exp(-0.5 * std::norm(alpha));
    for (int k = 1; k <= n; ++k) {
        v *= alpha / std::sqrt(static_cast<double>(k));
    }
    return v;
}

// Largest eigenvalue of a Hermitian matrix.
inline double lambda_max(const Eigen::MatrixXcd &h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    return es.eigenvalues().maxCoeff();
}

// Lindblad right-hand side for k D[a] + k D[a^dag] with truncated operators.
inline Eigen::MatrixXcd heating_rhs(const Eigen::MatrixXcd &rho, double k) {
    const int dim = static_cast<int>(rho.rows());
    const Eigen::MatrixXcd a = annihilation(dim);
    const Eigen::MatrixXcd ad = a.adjoint();
    auto diss = [&](const Eigen::MatrixXcd &l) {
        const Eigen::MatrixXcd ldl = l.adjoint() * l;
        return Eigen::MatrixXcd(l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    };
    return k * (diss(a) + diss(ad));
}

inline Eigen::MatrixXcd heating_rk4(Eigen::MatrixXcd rho, double k, double t, int steps) {
    const double h = t / steps;
    for (int s = 0; s < steps; ++s) {
        const Eigen::MatrixXcd k1 = heating_rhs(rho, k);
        const Eigen::MatrixXcd k2 = heating_rhs(rho + 0.5 * h * k1, k);
        const Eigen::MatrixXcd k3 = heating_rhs(rho + 0.5 * h * k2, k);
        const Eigen::MatrixXcd k4 = heating_rhs(rho + h * k3, k);
        rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

}  // namespace oracle

#endif
