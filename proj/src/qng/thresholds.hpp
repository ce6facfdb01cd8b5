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


#ifndef QNG_THRESHOLDS_HPP
#define QNG_THRESHOLDS_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qng/fock.hpp"
#include "qng/optimize.hpp"

namespace qng {

enum class ThresholdKind { Classical = 0, GaussianMin = 1, GaussianIntrinsic = 2, GenuineN = 3 };

inline constexpr ThresholdKind kAllKinds[] = {ThresholdKind::Classical, ThresholdKind::GaussianMin,
                                              ThresholdKind::GaussianIntrinsic, ThresholdKind::GenuineN};

const char *kind_name(ThresholdKind kind);
ThresholdKind parse_kind(const std::string &text);

struct ThresholdDiagnostics {
    int grid_points = 0;
    std::vector<double> start_values;
    std::vector<bool> start_converged;
    bool converged = true;
    int bound_retries = 0;
    double final_r_bound = 0.0;
    double final_alpha_bound = 0.0;
    // |C(2N) - C(N)| at the optimum.
    double truncation_delta = 0.0;
    // |closed-form lambda_max - dense eigensolver| (genuine only).
    double eigen_delta = 0.0;
};

struct ThresholdResult {
    ThresholdKind kind;
    FockPair pair;
    double value;
    GaussianParams argmax;
    std::optional<int> fock_index;
    std::optional<CoreState> core;
    ThresholdDiagnostics diagnostics;

    /// The state this result claims is optimal, at the given truncation.
    Eigen::VectorXcd state(int dim) const;
};

struct ThresholdOptions {
    int truncation = kDefaultTruncation;
    int max_fock = 12;
    bool verify_truncation = true;
    int grid_density = 12;
    int n_starts = 16;
};

/// 2 ((m+n)/2)^{(m+n)/2} e^{-(m+n)/2} / sqrt(m! n!).
double classical_closed_form(const FockPair &pair);

ThresholdResult classical_threshold(const FockPair &pair);
/// Same threshold found by the optimizer over coherent states; used to cross-check the closed form.
ThresholdResult classical_threshold_search(const FockPair &pair, const ThresholdOptions &opt = {});
ThresholdResult gaussian_min_threshold(const FockPair &pair, const ThresholdOptions &opt = {});
ThresholdResult intrinsic_threshold(const FockPair &pair, const ThresholdOptions &opt = {});
ThresholdResult genuine_threshold(const FockPair &pair, const ThresholdOptions &opt = {});
ThresholdResult compute_threshold(ThresholdKind kind, const FockPair &pair, const ThresholdOptions &opt = {});

/// Coherence 2|<m|U|k><n|U|k>| of a Gaussian operation applied to |k>.
double fock_gaussian_coherence(const FockPair &pair, const GaussianParams &g, int k);

/// Largest coherence over core states of dimension d for a fixed Gaussian operation, from the
/// rank-2 closed form. Optionally returns the optimal core state.
double genuine_objective(const FockPair &pair, const GaussianParams &g, int d, Eigen::VectorXcd *core = nullptr);

/// e^{i theta} x y^dag + h.c. with x_i = conj(<m|U|i>), y_i = conj(<n|U|i>): its top eigenvector is the
/// optimal core state.
Eigen::MatrixXcd genuine_state_matrix(const FockPair &pair, const GaussianParams &g, int d, double theta);
/// The same construction in the index convention G_ij = a_{i,m} a*_{j,n} e^{i theta} + h.c.,
/// a_{i,m} = <i|U|m>.
Eigen::MatrixXcd genuine_paper_matrix(const FockPair &pair, const GaussianParams &g, int d, double theta);
/// theta maximizing the top eigenvalue of genuine_state_matrix.
double genuine_optimal_theta(const FockPair &pair, const GaussianParams &g, int d);

/// Memo store keyed by (kind, m, n); safe for concurrent use. With a directory, results are
/// also persisted as JSON and reloaded when truncation and version match.
class ThresholdCache {
   public:
    explicit ThresholdCache(ThresholdOptions opt = {}, std::string directory = "");
    ThresholdResult get(ThresholdKind kind, const FockPair &pair);
    const ThresholdOptions &options() const {
        return opt_;
    }
    size_t computed_count() const;

   private:
    std::optional<ThresholdResult> load(ThresholdKind kind, const FockPair &pair) const;
    void store(const ThresholdResult &r) const;
    std::string path_for(ThresholdKind kind, const FockPair &pair) const;

    ThresholdOptions opt_;
    std::string dir_;
    mutable std::mutex mu_;
    std::map<std::tuple<int, int, int>, ThresholdResult> memo_;
    size_t computed_ = 0;
};

/// (2/(m-n)^2) ln(measured / threshold).
double depth_from_threshold(double measured, double threshold, const FockPair &pair);

struct KindVerdict {
    ThresholdKind kind;
    double threshold;
    double margin;
    bool verdict;
    bool marginal;
    std::optional<double> depth;
};

struct CertificationReport {
    FockPair pair;
    double measured;
    double uncertainty;
    std::vector<KindVerdict> kinds;

    bool any_verdict() const;
    const KindVerdict &at(ThresholdKind kind) const;
};

CertificationReport certify(const FockPair &pair, double measured, double uncertainty, ThresholdCache &cache);

}  // namespace qng

#endif
