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

#ifndef QNG_FOCK_HPP
#define QNG_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace qng {

using cplx = std::complex<double>;

inline constexpr int kDefaultTruncation = 128;
inline constexpr int kDefaultPad = 32;
inline constexpr int kMaxHermiteOrder = 64;
// Range over which the closed-form amplitude has been validated.
inline constexpr double kMaxSqueeze = 2.0;
inline constexpr double kMaxDisplacement = 6.0;

double wrap_phase(double phase);

/// Index pair (m, n) of the coherence <m|rho|n>. Stored canonically with m < n.
class FockPair {
   public:
    FockPair(int a, int b);

    int m() const noexcept {
        return m_;
    }
    int n() const noexcept {
        return n_;
    }
    int gap() const noexcept {
        return n_ - m_;
    }
    std::string str() const;

    friend bool operator==(const FockPair &, const FockPair &) = default;
    friend auto operator<=>(const FockPair &, const FockPair &) = default;

   private:
    int m_;
    int n_;
};

/// Parameters of the Gaussian unitary S(xi) D(alpha), xi = xi_mag e^{i xi_phase},
/// alpha = alpha_mag e^{i alpha_phase}. S(xi) = exp((xi* a^2 - xi a^dag^2)/2),
/// D(alpha) = exp(alpha a^dag - alpha* a).
struct GaussianParams {
    double xi_mag = 0.0;
    double xi_phase = 0.0;
    double alpha_mag = 0.0;
    double alpha_phase = 0.0;

    static GaussianParams make(double xi_mag, double xi_phase, double alpha_mag, double alpha_phase);
    static GaussianParams from_complex(cplx xi, cplx alpha);
    /// Parameters of D(alpha) S(xi) rewritten in S(xi) D(alpha') order.
    static GaussianParams displace_after_squeeze(cplx xi, cplx alpha);

    cplx xi() const;
    cplx alpha() const;
    /// Parameters of (S(xi) D(alpha))^dagger, again in S D order.
    GaussianParams adjoint() const;
};

/// Unit vector of core-state coefficients c_0..c_{d-1}.
class CoreState {
   public:
    explicit CoreState(Eigen::VectorXcd coeffs);
    static CoreState fock(int k, int dim);

    const Eigen::VectorXcd &coeffs() const noexcept {
        return coeffs_;
    }
    int dim() const noexcept {
        return static_cast<int>(coeffs_.size());
    }

   private:
    Eigen::VectorXcd coeffs_;
};

/// Truncated oscillator pure state with a unit norm and an empty tail.
class PureState {
   public:
    explicit PureState(Eigen::VectorXcd amplitudes);

    const Eigen::VectorXcd &amplitudes() const noexcept {
        return amps_;
    }
    int dim() const noexcept {
        return static_cast<int>(amps_.size());
    }

   private:
    Eigen::VectorXcd amps_;
};

class DensityMatrix {
   public:
    explicit DensityMatrix(Eigen::MatrixXcd elements);

    static DensityMatrix from_pure(const Eigen::VectorXcd &psi);
    static DensityMatrix from_pure(const PureState &psi) {
        return from_pure(psi.amplitudes());
    }
    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix thermal(int dim, double nbar);

    /// Convex combination p * this + (1 - p) * other.
    DensityMatrix mix(const DensityMatrix &other, double p) const;

    const Eigen::MatrixXcd &matrix() const noexcept {
        return rho_;
    }
    int dim() const noexcept {
        return static_cast<int>(rho_.rows());
    }
    cplx operator()(int j, int k) const {
        return rho_(j, k);
    }
    double population(int k) const {
        return rho_(k, k).real();
    }
    double mean_number() const;

   private:
    Eigen::MatrixXcd rho_;
};

/// Physicists' Hermite polynomial H_order(z) by three-term recurrence.
cplx hermite_eval(int order, cplx z);

/// g_k = w^k H_k(e / (2 w)) with w^2 = -a, for k = 0..order. Finite for a -> 0,
/// where it reduces to e^k.
Eigen::VectorXcd scaled_hermite(int order, cplx a, cplx e);

/// <n|alpha> for the coherent state |alpha>.
cplx coherent_amplitude(int n, cplx alpha);

/// <m|S(xi) D(alpha)|n>, closed form as a finite Hermite double sum.
cplx sdf_amplitude(int m, int n, const GaussianParams &g);

/// Table of <m|S(xi) D(alpha)|k> for m < rows, k < cols via the ladder recurrences.
Eigen::MatrixXcd amplitude_table(const GaussianParams &g, int rows, int cols);

/// Truncated-generator oracle: returns exp(G_S) exp(G_D) v evaluated at `working_dim`.
Eigen::VectorXcd apply_gaussian(const GaussianParams &g, const Eigen::VectorXcd &v, int working_dim);

/// dim x dim block of S(xi) D(alpha) computed at dim + pad and cropped.
Eigen::MatrixXcd build_gaussian_matrix(const GaussianParams &g, int dim, int pad = kDefaultPad);

/// S(xi) D(alpha) |core>, truncated to `dim` rows.
Eigen::VectorXcd gaussian_state(const GaussianParams &g, const CoreState &core, int dim);

/// (|m> + e^{i phase} |n>) / sqrt(2).
Eigen::VectorXcd fock_superposition(const FockPair &pair, double phase, int dim);

/// C_{m,n}(rho) = 2 |<m|rho|n>|.
double coherence_quantifier(const DensityMatrix &rho, const FockPair &pair);
double coherence_quantifier(const Eigen::VectorXcd &psi, const FockPair &pair);

}  // namespace qng

#endif
