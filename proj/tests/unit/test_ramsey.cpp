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
#include <random>

#include <gtest/gtest.h>

#include "qng/channels.hpp"
#include "qng/error.hpp"
#include "qng/ramsey.hpp"

using namespace qng;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected qng::Error";
    return ErrorCode::Io;
}

double angle_diff(double a, double b) {
    return std::abs(wrap_phase(a - b));
}

}  // namespace

TEST(Sequence, ladder_structure) {
    const auto s1 = build_sequence_0n(1);
    ASSERT_EQ(s1.preparation.size(), 1u);
    EXPECT_EQ(s1.preparation[0].kind, PulseKind::BSB);
    EXPECT_NEAR(s1.preparation[0].area, M_PI / 2, 1e-15);
    EXPECT_EQ(s1.levels, 2);

    const auto s3 = build_sequence_0n(3);
    EXPECT_EQ(s3.levels, 3);
    EXPECT_EQ(s3.preparation.front().kind, PulseKind::BSB);
    EXPECT_EQ(s3.preparation[1].kind, PulseKind::Shelve);
    EXPECT_EQ(s3.preparation.back().kind, PulseKind::Unshelve);
    EXPECT_EQ(s3.analysis.size(), s3.preparation.size());

    const auto inv = inverse_pulses(s3.preparation);
    EXPECT_EQ(inv.front().kind, PulseKind::Shelve);
    EXPECT_EQ(inv.back().kind, PulseKind::BSB);
    EXPECT_THROW(build_sequence_0n(0), Error);
    EXPECT_THROW(build_sequence_0n(9), Error);
}

TEST(Sequence, inverse_undoes_preparation) {
    for (int n = 1; n <= 6; ++n) {
        const auto seq = build_sequence_0n(n);
        SpinOscState s = SpinOscState::ground(seq.levels, n + 12);
        for (const auto &p : seq.preparation) s = apply_pulse(s, p);
        for (const auto &p : inverse_pulses(seq.preparation)) s = apply_pulse(s, p);
        EXPECT_NEAR(std::abs(s.amplitudes[0]), 1.0, 1e-12) << n;
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    }
}

TEST(Sequence, prepared_state_is_balanced_superposition) {
    for (int n = 1; n <= 6; ++n) {
        const auto seq = build_sequence_0n(n);
        const int dim = n + 12;
        const Eigen::MatrixXcd rho = prepared_state(seq, NoiseConfig{}, dim);
        const Eigen::VectorXd pops = motional_populations(rho, seq.levels);
        EXPECT_NEAR(pops[0], 0.5, 1e-12) << n;
        EXPECT_NEAR(pops[n], 0.5, 1e-12) << n;
        const int lev = target_level(seq);
        EXPECT_NEAR(2 * std::abs(rho(0, lev * dim + n)), 1.0, 1e-12) << n;
    }
}

TEST(Sequence, general_pair_mapping) {
    const auto s = build_sequence_mn(1, 2);
    ASSERT_TRUE(s.mapping_j.has_value());
    ASSERT_TRUE(s.mapping_l.has_value());
    EXPECT_LT(std::abs(*s.mapping_l - std::round(*s.mapping_l)), 0.02);
    const auto f = run_ramsey(s, 0.0, NoiseConfig{}, uniform_phases(12), 0, 1);
    EXPECT_GT(f.contrast, 0.9);
}

TEST(Ramsey, ideal_contrast) {
    for (int n = 1; n <= 4; ++n) {
        const auto f = run_ramsey(build_sequence_0n(n), 0.0, NoiseConfig{}, uniform_phases(16), 0, 1);
        EXPECT_GE(f.contrast, 1 - 1e-6) << n;
        EXPECT_NEAR(f.fit_mean, 0.5, 1e-9);
    }
}

TEST(Ramsey, dephasing_gives_gaussian_contrast) {
    NoiseConfig noise;
    noise.dephasing_rate = 2.0;
    const double delay = 0.01;
    for (int n = 1; n <= 4; ++n) {
        const auto f = run_ramsey(build_sequence_0n(n), delay, noise, uniform_phases(16), 0, 1);
        EXPECT_NEAR(f.contrast, std::exp(-0.5 * 2.0 * delay * n * n), 1e-9) << n;
    }
}

TEST(Ramsey, detuning_phase_scales_with_fock_index) {
    NoiseConfig noise;
    noise.motional_detuning = 2 * M_PI * 15.0;
    const double tau = 0.002;
    for (int n = 1; n <= 3; ++n) {
        const auto seq = build_sequence_0n(n);
        const auto f0 = run_ramsey(seq, 0.0, noise, uniform_phases(16), 0, 1);
        const auto f1 = run_ramsey(seq, tau, noise, uniform_phases(16), 0, 1);
        const double shift = f1.fit_phase_offset - f0.fit_phase_offset;
        const double expect = n * noise.motional_detuning * tau;
        EXPECT_LT(std::min(angle_diff(shift, expect), angle_diff(shift, -expect)), 1e-9) << n;
        EXPECT_NEAR(f1.contrast, 1.0, 1e-9);
    }
}

TEST(Ramsey, electronic_and_shelving_penalties) {
    NoiseConfig noise;
    noise.electronic_coherence_time = 8e-3;
    noise.pulse_duration = 50e-6;
    const auto seq = build_sequence_0n(3);
    const auto f = run_ramsey(seq, 0.0, noise, uniform_phases(16), 0, 1);
    const double t_sup = 50e-6 * (seq.preparation.size() + seq.analysis.size());
    EXPECT_NEAR(f.contrast, std::exp(-t_sup / 8e-3), 1e-9);

    NoiseConfig shelf;
    shelf.shelving_contrast_factor = 0.9;
    EXPECT_NEAR(run_ramsey(seq, 0.0, shelf, uniform_phases(16), 0, 1).contrast, 0.81, 1e-9);
    EXPECT_NEAR(run_ramsey(build_sequence_0n(2), 0.0, shelf, uniform_phases(16), 0, 1).contrast, 1.0, 1e-9);
}

TEST(Ramsey, thermal_start_lowers_contrast) {
    NoiseConfig noise;
    noise.initial_thermal_nbar = 0.07;
    const auto f = run_ramsey(build_sequence_0n(2), 0.0, noise, uniform_phases(16), 0, 1);
    EXPECT_LT(f.contrast, 1.0);
    EXPECT_GT(f.contrast, 0.9);
}

TEST(Ramsey, shot_noise_is_seeded) {
    const auto seq = build_sequence_0n(2);
    const auto a = run_ramsey(seq, 0.0, NoiseConfig{}, uniform_phases(10), 200, 5);
    const auto b = run_ramsey(seq, 0.0, NoiseConfig{}, uniform_phases(10), 200, 5);
    const auto c = run_ramsey(seq, 0.0, NoiseConfig{}, uniform_phases(10), 200, 6);
    int differ = 0;
    for (size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].pe, b.points[i].pe);
        differ += a.points[i].pe != c.points[i].pe;
    }
    EXPECT_GT(differ, 0);
    EXPECT_GT(a.contrast_err, 0.0);
}

TEST(Ramsey, pulse_jitter_reduces_contrast) {
    NoiseConfig noise;
    noise.pulse_error = 0.05;
    const auto f = run_ramsey(build_sequence_0n(3), 0.0, noise, uniform_phases(16), 0, 3);
    EXPECT_LT(f.contrast, 1.0);
}

TEST(Fit, round_trip_coverage) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0, 1);
    const auto phases = uniform_phases(16);
    const long shots = 250;
    int covered = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        const double contrast = 0.3 + 0.6 * u(rng), offset = 2 * M_PI * u(rng);
        std::vector<FringePoint> pts;
        for (double ph : phases) {
            const double p = 0.5 + 0.5 * contrast * std::cos(ph + offset);
            std::binomial_distribution<long> bin(shots, p);
            pts.push_back({ph, static_cast<double>(bin(rng)) / shots, shots});
        }
        const auto f = fit_fringe(pts);
        covered += std::abs(f.contrast - contrast) <= 2 * f.contrast_err;
    }
    EXPECT_GE(covered, static_cast<int>(0.9 * trials));
}

TEST(Fit, exact_fringe_and_guards) {
    std::vector<FringePoint> pts;
    for (double ph : uniform_phases(8)) {
        pts.push_back({ph, 0.4 + 0.3 * std::cos(ph - 0.6), 0});
    }
    const auto f = fit_fringe(pts);
    EXPECT_NEAR(f.contrast, 0.6, 1e-12);
    EXPECT_NEAR(f.fit_mean, 0.4, 1e-12);
    EXPECT_EQ(code_of([] { fit_fringe({{0.0, 0.5, 0}, {1.0, 0.2, 0}}); }), ErrorCode::Fit);
    EXPECT_EQ(code_of([] { fit_fringe({{0.0, 0.5, 0}, {0.0, 0.2, 0}, {1.0, 0.1, 0}}); }), ErrorCode::Fit);
}

TEST(Pulses, guards) {
    const int dim = 12;
    EXPECT_EQ(code_of([&] { apply_pulse(SpinOscState::ground(2, dim, dim - 1), {PulseKind::BSB, M_PI, 0}); }),
              ErrorCode::Truncation);
    EXPECT_THROW(apply_pulse(SpinOscState::ground(2, dim), {PulseKind::Shelve, M_PI, 0}), Error);
    EXPECT_THROW(apply_pulse(SpinOscState::ground(2, dim), {PulseKind::Carrier, M_PI, 0, 1e3, 0.0}), Error);
    NoiseConfig bad;
    bad.shelving_contrast_factor = 0.0;
    EXPECT_THROW(bad.validate(), Error);
    NoiseConfig neg;
    neg.heating_rate = -1;
    EXPECT_THROW(neg.validate(), Error);
}

TEST(Pulses, detuned_carrier_matches_two_level_formula) {
    const double omega = 2 * M_PI * 20e3, delta = 2 * M_PI * 5e3;
    const PulseSpec p{PulseKind::Carrier, M_PI, 0.0, delta, omega};
    const auto s = apply_pulse(SpinOscState::ground(2, 10), p);
    const double t = M_PI / omega;
    const double w = std::hypot(omega, delta);
    const double pe = omega * omega / (w * w) * std::pow(std::sin(0.5 * w * t), 2);
    EXPECT_NEAR(std::norm(s.amplitudes[10]), pe, 1e-12);
}

TEST(DecayScan, error_names_the_delay) {
    NoiseConfig noise;
    noise.heating_rate = 3.2;
    ThresholdCache cache;
    ScanOptions opt;
    opt.dim = 20;
    try {
        decay_scan(FockPair(0, 8), {0.0, 5.0}, noise, ThresholdKind::GenuineN, cache, opt);
        FAIL() << "expected truncation error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Truncation);
        EXPECT_NE(std::string(e.what()).find("delay 5"), std::string::npos);
    }
}

TEST(DecayScan, heated_joint_coherence_matches_thermal_limit) {
    const FockPair p(0, 1);
    const auto seq = build_sequence_0n(1);
    const int dim = 40;
    ThresholdCache cache;
    const std::vector<double> delays{0.0, 0.01, 0.02, 0.03};
    const auto ref = thermal_depth_limit(p, 3.2, delays, ThresholdKind::GenuineN, cache, dim);
    const Eigen::MatrixXcd rho = prepared_state(seq, NoiseConfig{}, dim);
    for (size_t i = 0; i < delays.size(); ++i) {
        const Eigen::MatrixXcd heated = HeatingPropagator(dim, 3.2, delays[i]).apply_joint(rho, seq.levels);
        EXPECT_NEAR(2 * std::abs(heated(0, dim + 1)), ref[i].coherence, 1e-12) << delays[i];
    }
}

// Fringe contrast against the heated coherence of the ideal state, 1% tolerance.
TEST(HeatingEquivalence, fringe_contrast_tracks_thermal_limit) {
    NoiseConfig noise;
    noise.heating_rate = 3.2;
    ThresholdCache cache;
    const std::vector<double> delays{0.0, 0.01, 0.02, 0.03};
    const auto pts = decay_scan(FockPair(0, 1), delays, noise, ThresholdKind::GenuineN, cache);
    const auto ref = thermal_depth_limit(FockPair(0, 1), 3.2, delays, ThresholdKind::GenuineN, cache);
    for (size_t i = 0; i < delays.size(); ++i) {
        EXPECT_NEAR(pts[i].contrast, ref[i].coherence, 0.01 * ref[i].coherence) << delays[i];
    }
}
