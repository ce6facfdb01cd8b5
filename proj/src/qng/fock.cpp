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

#include "qng/fock.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "qng/error.hpp"

namespace qng {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double log_factorial(int k) {
    return std::lgamma(static_cast<double>(k) + 1.0);
}

// Applies the generator of D(alpha): (alpha a^dag - alpha* a) v.
void displacement_generator(cplx alpha, const Eigen::VectorXcd &v, Eigen::VectorXcd &out) {
    const Eigen::Index dim = v.size();
    for (Eigen::Index k = 0; k < dim; ++k) {
        cplx acc = 0.0;
        if (k > 0) {
            acc += alpha * std::sqrt(static_cast<double>(k)) * v[k - 1];
        }
        if (k + 1 < dim) {
            acc -= std::conj(alpha) * std::sqrt(static_cast<double>(k + 1)) * v[k + 1];
        }
        out[k] = acc;
    }
}

// Applies the generator of S(xi): (xi* a^2 - xi a^dag^2) / 2 v.
void squeeze_generator(cplx xi, const Eigen::VectorXcd &v, Eigen::VectorXcd &out) {
    const Eigen::Index dim = v.size();
    for (Eigen::Index k = 0; k < dim; ++k) {
        cplx acc = 0.0;
        if (k + 2 < dim) {
            acc += std::conj(xi) * std::sqrt(static_cast<double>((k + 1) * (k + 2))) * v[k + 2];
        }
        if (k >= 2) {
            acc -= xi * std::sqrt(static_cast<double>(k * (k - 1))) * v[k - 2];
        }
        out[k] = 0.5 * acc;
    }
}

// exp(G) v by scaling and Taylor series; `norm_bound` bounds ||G||.
template <typename Generator>
Eigen::VectorXcd taylor_expv(Generator &&apply, double norm_bound, Eigen::VectorXcd v) {
    const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound)));
    const double h = 1.0 / steps;
    Eigen::VectorXcd term(v.size());
    Eigen::VectorXcd next(v.size());
    for (int s = 0; s < steps; ++s) {
        term = v;
        Eigen::VectorXcd acc = v;
        for (int j = 1; j < 200; ++j) {
            apply(term, next);
            term = next * (h / j);
            acc += term;
            if (term.norm() <= 1e-18 * acc.norm()) {
                break;
            }
        }
        v = std::move(acc);
    }
    return v;
}

}  // namespace

double wrap_phase(double phase) {
    double p = std::fmod(phase, kTwoPi);
    if (p < 0.0) {
        p += kTwoPi;
    }
    if (p >= kTwoPi) {
        p = 0.0;
    }
    return p;
}

FockPair::FockPair(int a, int b) {
    require(a >= 0 && b >= 0, "Fock indices must be non-negative");
    require(a != b, "Fock pair needs two distinct indices");
    m_ = std::min(a, b);
    n_ = std::max(a, b);
}

std::string FockPair::str() const {
    std::ostringstream os;
    os << m_ << "," << n_;
    return os.str();
}

GaussianParams GaussianParams::make(double xi_mag, double xi_phase, double alpha_mag, double alpha_phase) {
    require(xi_mag >= 0.0 && alpha_mag >= 0.0, "squeeze and displacement magnitudes must be non-negative");
    require(std::isfinite(xi_mag) && std::isfinite(alpha_mag) && std::isfinite(xi_phase) &&
                std::isfinite(alpha_phase),
            "Gaussian parameters must be finite");
    return GaussianParams{xi_mag, wrap_phase(xi_phase), alpha_mag, wrap_phase(alpha_phase)};
}

GaussianParams GaussianParams::from_complex(cplx xi, cplx alpha) {
    return make(std::abs(xi), std::arg(xi), std::abs(alpha), std::arg(alpha));
}

GaussianParams GaussianParams::displace_after_squeeze(cplx xi, cplx alpha) {
    // D(alpha) S(xi) = S(xi) D(alpha cosh r + alpha* e^{i theta} sinh r).
    const double r = std::abs(xi);
    const cplx e = std::polar(1.0, std::arg(xi));
    return from_complex(xi, alpha * std::cosh(r) + std::conj(alpha) * e * std::sinh(r));
}

cplx GaussianParams::xi() const {
    return std::polar(xi_mag, xi_phase);
}

cplx GaussianParams::alpha() const {
    return std::polar(alpha_mag, alpha_phase);
}

GaussianParams GaussianParams::adjoint() const {
    // (S(xi) D(alpha))^dag = D(-alpha) S(-xi) = S(-xi) D(-alpha cosh r + alpha* e^{i theta} sinh r).
    const double r = xi_mag;
    const cplx e = std::polar(1.0, xi_phase);
    const cplx a = alpha();
    return from_complex(-xi(), -a * std::cosh(r) + std::conj(a) * e * std::sinh(r));
}

CoreState::CoreState(Eigen::VectorXcd coeffs) : coeffs_(std::move(coeffs)) {
    require(coeffs_.size() > 0, "core state needs at least one coefficient");
    require(std::abs(coeffs_.norm() - 1.0) < 1e-12, "core state must have unit norm");
}

CoreState CoreState::fock(int k, int dim) {
    require(k >= 0 && k < dim, "Fock index outside core dimension");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
    c[k] = 1.0;
    return CoreState(std::move(c));
}

PureState::PureState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    require(amps_.size() > 8, "pure state dimension too small for the tail guard");
    require(std::abs(amps_.squaredNorm() - 1.0) < 1e-9, "pure state must have unit norm");
    const Eigen::Index tail = 8;
    if (amps_.tail(tail).squaredNorm() >= 1e-8) {
        fail(ErrorCode::Truncation, "pure state has population in the last 8 Fock levels");
    }
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd elements) : rho_(std::move(elements)) {
    require(rho_.rows() == rho_.cols() && rho_.rows() > 0, "density matrix must be square and non-empty");
    const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    require(herm < 1e-10, "density matrix is not Hermitian");
    require(std::abs(rho_.trace().real() - 1.0) < 1e-9, "density matrix trace must be 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1e-9, "density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd &psi) {
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    require(dim > 0, "dimension must be positive");
    return DensityMatrix(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::thermal(int dim, double nbar) {
    require(dim > 0 && nbar >= 0.0, "thermal state needs dim > 0 and nbar >= 0");
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    const double q = nbar / (1.0 + nbar);
    double p = 1.0 / (1.0 + nbar);
    double total = 0.0;
    for (int k = 0; k < dim; ++k) {
        rho(k, k) = p;
        total += p;
        p *= q;
    }
    if (1.0 - total > 1e-9) {
        fail(ErrorCode::Truncation, "thermal distribution does not fit in the truncated space");
    }
    rho /= total;
    return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::mix(const DensityMatrix &other, double p) const {
    require(other.dim() == dim(), "mixing density matrices of different dimension");
    require(p >= 0.0 && p <= 1.0, "mixing weight must be in [0, 1]");
    Eigen::MatrixXcd m = p * rho_ + (1.0 - p) * other.rho_;
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix(std::move(m));
}

double DensityMatrix::mean_number() const {
    double acc = 0.0;
    for (int k = 0; k < dim(); ++k) {
        acc += k * population(k);
    }
    return acc;
}

cplx hermite_eval(int order, cplx z) {
    if (order < 0 || order > kMaxHermiteOrder) {
        fail(ErrorCode::UnsupportedOrder, "Hermite order " + std::to_string(order) + " outside [0, 64]");
    }
    cplx prev = 1.0;
    if (order == 0) {
        return prev;
    }
    cplx cur = 2.0 * z;
    for (int k = 1; k < order; ++k) {
        cplx next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

Eigen::VectorXcd scaled_hermite(int order, cplx a, cplx e) {
    if (order < 0 || order > kMaxHermiteOrder) {
        fail(ErrorCode::UnsupportedOrder, "Hermite order " + std::to_string(order) + " outside [0, 64]");
    }
    // H_{k+1} = 2x H_k - 2k H_{k-1} multiplied through by w^{k+1}, x = e / (2w), w^2 = -a.
    Eigen::VectorXcd g(order + 1);
    g[0] = 1.0;
    if (order >= 1) {
        g[1] = e;
    }
    for (int k = 1; k < order; ++k) {
        g[k + 1] = e * g[k] + 2.0 * static_cast<double>(k) * a * g[k - 1];
    }
    return g;
}

cplx coherent_amplitude(int n, cplx alpha) {
    require(n >= 0, "Fock index must be non-negative");
    const double mag = std::abs(alpha);
    if (mag == 0.0) {
        return n == 0 ? cplx(1.0) : cplx(0.0);
    }
    const double log_mag = -0.5 * mag * mag + n * std::log(mag) - 0.5 * log_factorial(n);
    return std::polar(std::exp(log_mag), n * std::arg(alpha));
}

cplx sdf_amplitude(int m, int n, const GaussianParams &g) {
    require(m >= 0 && n >= 0, "Fock indices must be non-negative");
    if (m > kMaxHermiteOrder || n > kMaxHermiteOrder) {
        fail(ErrorCode::UnsupportedOrder, "closed-form amplitude supports Fock indices up to 64");
    }
    if (g.xi_mag > kMaxSqueeze || g.alpha_mag > kMaxDisplacement) {
        fail(ErrorCode::Range, "Gaussian parameters outside the validated range |xi| <= 2, |alpha| <= 6");
    }
    // Generating function sum_{m,n} A_mn s^m t^n / sqrt(m! n!) =
    //   N exp(A s^2 + B t^2 + C s t + E s + F t).
    const double r = g.xi_mag;
    const double c = std::cosh(r);
    const double tau = std::tanh(r);
    const cplx e = std::polar(1.0, g.xi_phase);
    const cplx alpha = g.alpha();
    const cplx quad_s = -e * tau / 2.0;
    const cplx quad_t = std::conj(e) * tau / 2.0;
    const double cross = 1.0 / c;
    const cplx lin_s = alpha / c;
    const cplx lin_t = std::conj(e) * tau * alpha - std::conj(alpha);
    const cplx log_norm = -0.5 * std::log(c) - 0.5 * std::norm(alpha) + 0.5 * std::conj(e) * alpha * alpha * tau;

    const Eigen::VectorXcd hs = scaled_hermite(m, quad_s, lin_s);
    const Eigen::VectorXcd ht = scaled_hermite(n, quad_t, lin_t);
    // Magnitude shadows of the same recurrences bound the rounding error.
    const Eigen::VectorXd bs = scaled_hermite(m, std::abs(quad_s), std::abs(lin_s)).real();
    const Eigen::VectorXd bt = scaled_hermite(n, std::abs(quad_t), std::abs(lin_t)).real();
    const double half_log_mn = 0.5 * (log_factorial(m) + log_factorial(n));
    cplx sum = 0.0;
    double bound = 0.0;
    for (int i = 0; i <= std::min(m, n); ++i) {
        const double log_w =
            half_log_mn - log_factorial(i) - log_factorial(m - i) - log_factorial(n - i) + i * std::log(cross);
        const double w = std::exp(log_w);
        sum += w * hs[m - i] * ht[n - i];
        bound += w * bs[m - i] * bt[n - i];
    }
    const double scale = std::exp(log_norm.real());
    const double err = 4.0 * (m + n + 2) * std::numeric_limits<double>::epsilon() * scale * bound;
    if (err > 1e-9) {
        fail(ErrorCode::Range, "closed-form amplitude loses precision at (" + std::to_string(m) + "," +
                                   std::to_string(n) + ") for these parameters");
    }
    return std::exp(log_norm) * sum;
}

Eigen::MatrixXcd amplitude_table(const GaussianParams &g, int rows, int cols) {
    require(rows > 0 && cols > 0, "amplitude table needs positive extents");
    // Extended precision: the column recurrence amplifies rounding by roughly cosh(r) per column.
    using lcplx = std::complex<long double>;
    const int total = rows + cols;
    const long double r = g.xi_mag;
    const long double c = std::cosh(r);
    const long double sh = std::sinh(r);
    const lcplx e = std::polar(1.0L, static_cast<long double>(g.xi_phase));
    const lcplx alpha = std::polar(static_cast<long double>(g.alpha_mag), static_cast<long double>(g.alpha_phase));
    const lcplx alpha_c = std::conj(alpha);
    const lcplx e_c = std::conj(e);

    std::vector<lcplx> prev(total), cur(total);
    Eigen::MatrixXcd out(rows, cols);
    prev[0] = std::exp(-0.5L * std::log(c) - 0.5L * std::norm(alpha) + 0.5L * e_c * alpha * alpha * std::tanh(r));
    // (a cosh r + a^dag e sinh r - alpha) U|0> = 0.
    for (int m = 0; m + 1 < total; ++m) {
        lcplx v = alpha * prev[m];
        if (m > 0) {
            v -= e * sh * std::sqrt(static_cast<long double>(m)) * prev[m - 1];
        }
        prev[m + 1] = v / (c * std::sqrt(static_cast<long double>(m + 1)));
    }
    for (int m = 0; m < rows; ++m) {
        out(m, 0) = cplx(static_cast<double>(prev[m].real()), static_cast<double>(prev[m].imag()));
    }
    // U a^dag = (a^dag cosh r + a e* sinh r - alpha*) U.
    for (int k = 0; k + 1 < cols; ++k) {
        const long double norm = 1.0L / std::sqrt(static_cast<long double>(k + 1));
        const int valid = total - k - 1;
        for (int m = 0; m < valid; ++m) {
            lcplx v = e_c * sh * std::sqrt(static_cast<long double>(m + 1)) * prev[m + 1] - alpha_c * prev[m];
            if (m > 0) {
                v += c * std::sqrt(static_cast<long double>(m)) * prev[m - 1];
            }
            cur[m] = v * norm;
        }
        std::swap(prev, cur);
        for (int m = 0; m < rows; ++m) {
            out(m, k + 1) = cplx(static_cast<double>(prev[m].real()), static_cast<double>(prev[m].imag()));
        }
    }
    return out;
}

Eigen::VectorXcd apply_gaussian(const GaussianParams &g, const Eigen::VectorXcd &v, int working_dim) {
    require(working_dim >= v.size(), "working dimension smaller than the input vector");
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(working_dim);
    x.head(v.size()) = v;
    const cplx alpha = g.alpha();
    const cplx xi = g.xi();
    if (g.alpha_mag > 0.0) {
        x = taylor_expv([&](const Eigen::VectorXcd &in, Eigen::VectorXcd &out) { displacement_generator(alpha, in, out); },
                        2.0 * g.alpha_mag * std::sqrt(static_cast<double>(working_dim)), std::move(x));
    }
    if (g.xi_mag > 0.0) {
        x = taylor_expv([&](const Eigen::VectorXcd &in, Eigen::VectorXcd &out) { squeeze_generator(xi, in, out); },
                        g.xi_mag * working_dim, std::move(x));
    }
    return x;
}

Eigen::MatrixXcd build_gaussian_matrix(const GaussianParams &g, int dim, int pad) {
    require(dim > 0 && pad >= 8, "gaussian matrix needs dim > 0 and pad >= 8");
    require(dim <= 4 * kDefaultTruncation, "gaussian matrix dimension above supported maximum");
    const int working = dim + pad;
    const int trusted_cols = std::max(1, dim / 2);
    Eigen::MatrixXcd out(dim, dim);
    for (int j = 0; j < dim; ++j) {
        Eigen::VectorXcd seed = Eigen::VectorXcd::Zero(j + 1);
        seed[j] = 1.0;
        Eigen::VectorXcd col = apply_gaussian(g, seed, working);
        if (j < trusted_cols) {
            // Same column with twice the padding; the crop must not move.
            Eigen::VectorXcd wide = apply_gaussian(g, seed, working + pad);
            if ((wide.head(dim) - col.head(dim)).cwiseAbs().maxCoeff() > 1e-9) {
                fail(ErrorCode::Truncation, "requested dimension " + std::to_string(dim) +
                                                " leaves too little padding for these Gaussian parameters");
            }
        }
        out.col(j) = col.head(dim);
    }
    return out;
}

Eigen::VectorXcd gaussian_state(const GaussianParams &g, const CoreState &core, int dim) {
    require(dim > 0, "dimension must be positive");
    return amplitude_table(g, dim, core.dim()) * core.coeffs();
}

Eigen::VectorXcd fock_superposition(const FockPair &pair, double phase, int dim) {
    require(pair.n() < dim, "Fock pair outside truncation");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[pair.m()] = 1.0 / std::sqrt(2.0);
    psi[pair.n()] = std::polar(1.0 / std::sqrt(2.0), phase);
    return psi;
}

double coherence_quantifier(const DensityMatrix &rho, const FockPair &pair) {
    require(pair.n() < rho.dim(), "Fock pair outside density-matrix dimension");
    return 2.0 * std::abs(rho(pair.m(), pair.n()));
}

double coherence_quantifier(const Eigen::VectorXcd &psi, const FockPair &pair) {
    require(pair.n() < psi.size(), "Fock pair outside state dimension");
    return 2.0 * std::abs(psi[pair.m()] * std::conj(psi[pair.n()]));
}

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid-argument";
        case ErrorCode::UnsupportedOrder:
            return "unsupported-order";
        case ErrorCode::Range:
            return "range";
        case ErrorCode::Truncation:
            return "truncation";
        case ErrorCode::NotConverged:
            return "not-converged";
        case ErrorCode::Fit:
            return "fit";
        case ErrorCode::Conditioning:
            return "conditioning";
        case ErrorCode::Config:
            return "config";
        case ErrorCode::Io:
            return "io";
    }
    return "unknown";
}

}  // namespace qng
