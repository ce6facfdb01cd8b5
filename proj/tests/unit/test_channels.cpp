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


#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qng/channels.hpp"
#include "qng/error.hpp"

using namespace qng;

namespace {

ThresholdCache &cache() {
    static ThresholdCache c;
    return c;
}

DensityMatrix ideal(const FockPair &p, int dim) {
    return DensityMatrix::from_pure(fock_superposition(p, 0.3, dim));
}

}  // namespace

TEST(Dephasing, composition_law) {
    const auto rho = DensityMatrix::thermal(30, 0.4).mix(ideal(FockPair(1, 4), 30), 0.5);
    const auto a = dephase(dephase(rho, {0.013}), {0.021});
    const auto b = dephase(rho, {0.034});
    EXPECT_LT((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((dephase(rho, {0.0}).matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Dephasing, populations_untouched_and_factor_exact) {
    const FockPair p(0, 3);
    const auto rho = ideal(p, 20);
    const auto d = dephase(rho, {0.05});
    for (int k = 0; k < 20; ++k) {
        EXPECT_DOUBLE_EQ(d.population(k), rho.population(k));
    }
    EXPECT_NEAR(coherence_quantifier(d, p), std::exp(-0.05 * 9 / 2), 1e-14);
}

TEST(Dephasing, joint_acts_on_every_block) {
    const int dim = 10, levels = 2;
    Eigen::MatrixXcd joint = Eigen::MatrixXcd::Constant(levels * dim, levels * dim, 0.01);
    const Eigen::MatrixXcd out = dephase_joint(joint, levels, 0.2);
    for (int a = 0; a < levels; ++a)
        for (int b = 0; b < levels; ++b)
            for (int j = 0; j < dim; ++j)
                for (int k = 0; k < dim; ++k)
                    EXPECT_NEAR(out(a * dim + j, b * dim + k).real(), 0.01 * std::exp(-0.1 * (j - k) * (j - k)),
                                1e-15);
}

TEST(Depth, gauge_property) {
    for (int n : {1, 2, 3, 4}) {
        const FockPair p(0, n);
        const auto rho = ideal(p, 24);
        const double d0 = depth(coherence_quantifier(rho, p), p, ThresholdKind::GenuineN, cache()).depth;
        for (double gamma : {0.0, 0.001, 0.005, 0.02, 0.1}) {
            const double c = coherence_quantifier(dephase(rho, {gamma}), p);
            const double d = depth(c, p, ThresholdKind::GenuineN, cache()).depth;
            EXPECT_NEAR(d, d0 - gamma, 1e-9) << n << " " << gamma;
        }
    }
}

TEST(Heating, matches_rk4_lindblad) {
    const int dim = 30;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[0] = std::sqrt(0.5);
    psi[2] = {0, std::sqrt(0.3)};
    psi[3] = std::sqrt(0.2);
    const Eigen::MatrixXcd rho = psi * psi.adjoint();
    const double rate = 3.2, t = 0.08;
    const Eigen::MatrixXcd ref = oracle::heating_rk4(rho, rate, t, 4000);
    const HeatingPropagator prop(dim, rate, t);
    EXPECT_LT((prop.apply(rho) - ref).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Heating, semigroup_and_trace) {
    const int dim = 24;
    const Eigen::MatrixXcd rho = ideal(FockPair(0, 2), dim).matrix();
    const HeatingPropagator a(dim, 3.2, 0.01), b(dim, 3.2, 0.02), ab(dim, 3.2, 0.03);
    const Eigen::MatrixXcd two = b.apply(a.apply(rho));
    EXPECT_LT((two - ab.apply(rho)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(two.trace().real(), 1.0, 1e-12);
}

TEST(Heating, mean_number_slope) {
    const auto vac = DensityMatrix::thermal(48, 0.0);
    std::vector<double> t, nbar;
    for (int i = 0; i <= 20; ++i) {
        t.push_back(1e-3 * i);
        nbar.push_back(thermalize(vac, {3.2, t.back()}).mean_number());
    }
    double st = 0, sn = 0, stt = 0, stn = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sn += nbar[i];
        stt += t[i] * t[i];
        stn += t[i] * nbar[i];
    }
    const double k = static_cast<double>(t.size());
    const double slope = (k * stn - st * sn) / (k * stt - st * st);
    EXPECT_NEAR(slope, 3.2, 0.032);
}

TEST(Heating, truncation_guard) {
    const auto vac = DensityMatrix::thermal(16, 0.0);
    try {
        thermalize(vac, {1000.0, 0.1});
        FAIL() << "expected truncation error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Truncation);
    }
    EXPECT_EQ(thermalize(vac, {3.2, 0.0}).matrix(), vac.matrix());
}

TEST(Heating, thermal_depth_limit_is_consistent) {
    const FockPair p(0, 1);
    const std::vector<double> times{0.0, 0.005, 0.01, 0.02, 0.03};
    const auto pts = thermal_depth_limit(p, 3.2, times, ThresholdKind::GenuineN, cache());
    ASSERT_EQ(pts.size(), times.size());
    EXPECT_NEAR(pts[0].coherence, 1.0, 1e-12);
    const double thr = cache().get(ThresholdKind::GenuineN, p).value;
    for (size_t i = 0; i < pts.size(); ++i) {
        EXPECT_NEAR(pts[i].depth, depth_from_threshold(pts[i].coherence, thr, p), 1e-12);
        if (i > 0) {
            EXPECT_LT(pts[i].coherence, pts[i - 1].coherence);
        }
    }
}
