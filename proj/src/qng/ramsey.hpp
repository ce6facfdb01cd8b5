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


#ifndef QNG_RAMSEY_HPP
#define QNG_RAMSEY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qng/fock.hpp"
#include "qng/thresholds.hpp"

namespace qng {

enum class PulseKind { Carrier, BSB, RSB, Shelve, Unshelve };

const char *pulse_name(PulseKind kind);

struct PulseSpec {
    PulseKind kind;
    // Bare area; the rotation angle of a coupled pair is area * coupling.
    double area;
    double phase;
    // rad/s, laser detuning from the addressed transition.
    double detuning = 0.0;
    // rad/s; 0 means an instantaneous pulse (requires zero detuning).
    double rabi_rate = 0.0;
};

/// Electronic levels g = 0, e = 1 and optional shelf a = 2; joint index = level * dim + k.
struct SpinOscState {
    int levels;
    int dim;
    Eigen::VectorXcd amplitudes;

    static SpinOscState ground(int levels, int dim, int fock = 0);
    double norm() const {
        return amplitudes.norm();
    }
};

struct Sequence {
    FockPair pair;
    int levels;
    std::vector<PulseSpec> preparation;
    // The scan phase is added to the last analysis pulse.
    std::vector<PulseSpec> analysis;
    std::optional<int> mapping_j;
    std::optional<double> mapping_l;
};

Sequence build_sequence_0n(int n, double phase_offset = 0.0);
Sequence build_sequence_mn(int m, int n, double phase_offset = 0.0);
/// Reverse order, each pulse replaced by its inverse.
std::vector<PulseSpec> inverse_pulses(const std::vector<PulseSpec> &pulses);

SpinOscState apply_pulse(const SpinOscState &state, const PulseSpec &pulse);
/// U rho U^dag on a (levels*dim)^2 joint density matrix.
Eigen::MatrixXcd apply_pulse(const Eigen::MatrixXcd &rho, const PulseSpec &pulse, int levels);

struct NoiseConfig {
    double initial_thermal_nbar = 0.0;
    // phonons/s
    double heating_rate = 0.0;
    // phase variance per second
    double dephasing_rate = 0.0;
    // fractional rms area error per pulse
    double pulse_error = 0.0;
    // seconds; 0 disables the penalty
    double electronic_coherence_time = 0.0;
    // seconds spent per pulse in an electronic superposition
    double pulse_duration = 0.0;
    // contrast factor per Shelve/Unshelve pair
    double shelving_contrast_factor = 1.0;
    // rad/s motional frequency offset during the delay
    double motional_detuning = 0.0;

    void validate() const;
};

struct FringePoint {
    double phase;
    double pe;
    long shots;
};

struct RamseyFringe {
    std::vector<FringePoint> points;
    double contrast;
    double contrast_err;
    double fit_phase_offset;
    double fit_mean;
};

/// Least squares of P_e = a + b cos(phi) + c sin(phi); contrast = 2 sqrt(b^2 + c^2).
RamseyFringe fit_fringe(std::vector<FringePoint> points);

std::vector<double> uniform_phases(int count);

/// Joint density matrix after the preparation pulses (thermal start, pulse jitter from `seed`).
Eigen::MatrixXcd prepared_state(const Sequence &seq, const NoiseConfig &noise, int dim, uint64_t seed = 0);
/// Populations summed over electronic levels.
Eigen::VectorXd motional_populations(const Eigen::MatrixXcd &joint, int levels);
/// Electronic level holding |n> of the pair in the ideal prepared state (|m> sits in g).
int target_level(const Sequence &seq);

/// shots = 0 reports exact probabilities.
RamseyFringe run_ramsey(const Sequence &seq, double delay, const NoiseConfig &noise, const std::vector<double> &phases,
                        long shots, uint64_t seed, int dim = 0);

struct DecayPoint {
    double delay;
    double contrast;
    double contrast_err;
    std::optional<double> depth;
    RamseyFringe fringe;
};

struct ScanOptions {
    int phases = 16;
    long shots = 0;
    uint64_t seed = 1;
    int dim = 0;
};

Sequence sequence_for(const FockPair &pair);
std::vector<DecayPoint> decay_scan(const FockPair &pair, const std::vector<double> &delays, const NoiseConfig &noise,
                                   ThresholdKind kind, ThresholdCache &cache, const ScanOptions &opt = {});

int default_ramsey_dim(const FockPair &pair, const NoiseConfig &noise, double max_delay);

}  // namespace qng

#endif
