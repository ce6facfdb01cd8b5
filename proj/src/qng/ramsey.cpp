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


#include "qng/ramsey.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qng/channels.hpp"
#include "qng/error.hpp"
#include "qng/optimize.hpp"

namespace qng {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kG = 0;
constexpr int kE = 1;
constexpr int kA = 2;

struct Rotation {
    cplx u11, u12, u21, u22;
};

// Two-level rotation in the rotating frame; coupling scales the Rabi rate.
Rotation rotation(const PulseSpec &p, double coupling) {
    const double omega_eff = coupling;
    double half_angle;
    double mix = 1.0;
    double detune = 0.0;
    if (p.rabi_rate > 0.0) {
        const double tau = p.area / p.rabi_rate;
        const double w_eff = p.rabi_rate * omega_eff;
        const double w_gen = std::hypot(w_eff, p.detuning);
        half_angle = 0.5 * w_gen * tau;
        if (w_gen > 0.0) {
            mix = w_eff / w_gen;
            detune = p.detuning / w_gen;
        }
    } else {
        half_angle = 0.5 * p.area * omega_eff;
    }
    const double c = std::cos(half_angle);
    const double s = std::sin(half_angle);
    const cplx ph = std::polar(1.0, p.phase);
    return Rotation{cplx(c, detune * s), cplx(0.0, -1.0) * std::conj(ph) * mix * s, cplx(0.0, -1.0) * ph * mix * s,
                    cplx(c, -detune * s)};
}

struct Coupled {
    int lower_level;
    int upper_level;
    int lower_fock;
    int upper_fock;
    double coupling;
};

// Enumerates coupled pairs and checks the truncation edge; `row_weight` returns the weight of a joint row.
template <typename RowWeight>
std::vector<Coupled> couplings(const PulseSpec &p, int levels, int dim, RowWeight &&row_weight) {
    std::vector<Coupled> out;
    auto edge = [&](int level, int k) {
        if (row_weight(level * dim + k) > 1e-10) {
            fail(ErrorCode::Truncation, std::string(pulse_name(p.kind)) + " pulse reaches the truncation edge at Fock level " +
                                            std::to_string(k));
        }
    };
    switch (p.kind) {
        case PulseKind::Carrier:
            for (int k = 0; k < dim; ++k) {
                out.push_back({kG, kE, k, k, 1.0});
            }
            break;
        case PulseKind::BSB:
            for (int k = 0; k + 1 < dim; ++k) {
                out.push_back({kG, kE, k, k + 1, std::sqrt(static_cast<double>(k + 1))});
            }
            edge(kG, dim - 1);
            break;
        case PulseKind::RSB:
            for (int k = 1; k < dim; ++k) {
                out.push_back({kG, kE, k, k - 1, std::sqrt(static_cast<double>(k))});
            }
            edge(kE, dim - 1);
            break;
        case PulseKind::Shelve:
        case PulseKind::Unshelve:
            if (levels < 3) {
                fail(ErrorCode::InvalidArgument, "shelving needs a third electronic level");
            }
            for (int k = 0; k < dim; ++k) {
                out.push_back({kG, kA, k, k, 1.0});
            }
            break;
    }
    return out;
}

PulseSpec effective(const PulseSpec &p) {
    require(p.area >= 0.0 && std::isfinite(p.area), "pulse area must be non-negative");
    require(p.rabi_rate >= 0.0, "Rabi rate must be non-negative");
    require(p.detuning == 0.0 || p.rabi_rate > 0.0, "a detuned pulse needs a finite Rabi rate");
    PulseSpec q = p;
    // Unshelve undoes Shelve at the same phase.
    if (p.kind == PulseKind::Unshelve) {
        q.phase += kPi;
    }
    return q;
}

// M <- U M for every column of M.
void rotate_rows(Eigen::MatrixXcd &mtx, const PulseSpec &pulse, int levels, int dim) {
    const PulseSpec p = effective(pulse);
    auto weight = [&](int row) { return mtx.row(row).norm(); };
    for (const Coupled &c : couplings(p, levels, dim, weight)) {
        const Rotation r = rotation(p, c.coupling);
        const int i1 = c.lower_level * dim + c.lower_fock;
        const int i2 = c.upper_level * dim + c.upper_fock;
        for (Eigen::Index col = 0; col < mtx.cols(); ++col) {
            const cplx a = mtx(i1, col);
            const cplx b = mtx(i2, col);
            mtx(i1, col) = r.u11 * a + r.u12 * b;
            mtx(i2, col) = r.u21 * a + r.u22 * b;
        }
    }
}

PulseSpec pulse(PulseKind kind, double area, double phase = 0.0) {
    return PulseSpec{kind, area, phase, 0.0, 0.0};
}

// Ladder from |., from> to |., to>: step k couples k-1 -> k with coupling sqrt(k).
void append_ladder(std::vector<PulseSpec> &out, int from, int to) {
    for (int k = from + 1; k <= to; ++k) {
        out.push_back(pulse(k % 2 == 1 ? PulseKind::BSB : PulseKind::RSB, kPi / std::sqrt(static_cast<double>(k))));
    }
}

Eigen::MatrixXcd initial_joint(int levels, int dim, double nbar) {
    const DensityMatrix th = DensityMatrix::thermal(dim, nbar);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(levels * dim, levels * dim);
    rho.block(0, 0, dim, dim) = th.matrix();
    return rho;
}

std::vector<PulseSpec> jitter(std::vector<PulseSpec> pulses, double err, std::mt19937_64 &rng) {
    if (err == 0.0) {
        return pulses;
    }
    std::normal_distribution<double> normal(0.0, err);
    for (auto &p : pulses) {
        p.area = std::max(0.0, p.area * (1.0 + normal(rng)));
    }
    return pulses;
}

double excited_probability(const Eigen::MatrixXcd &rho, int levels, int dim) {
    double pe = 0.0;
    for (int lev = kE; lev < levels; ++lev) {
        for (int k = 0; k < dim; ++k) {
            pe += rho(lev * dim + k, lev * dim + k).real();
        }
    }
    return std::clamp(pe, 0.0, 1.0);
}

}  // namespace

const char *pulse_name(PulseKind kind) {
    switch (kind) {
        case PulseKind::Carrier:
            return "carrier";
        case PulseKind::BSB:
            return "bsb";
        case PulseKind::RSB:
            return "rsb";
        case PulseKind::Shelve:
            return "shelve";
        case PulseKind::Unshelve:
            return "unshelve";
    }
    return "unknown";
}

SpinOscState SpinOscState::ground(int levels, int dim, int fock) {
    require(levels == 2 || levels == 3, "spin-oscillator state needs 2 or 3 electronic levels");
    require(dim >= 2 && fock >= 0 && fock < dim, "Fock level outside truncation");
    SpinOscState s{levels, dim, Eigen::VectorXcd::Zero(levels * dim)};
    s.amplitudes[fock] = 1.0;
    return s;
}

std::vector<PulseSpec> inverse_pulses(const std::vector<PulseSpec> &pulses) {
    std::vector<PulseSpec> out;
    for (auto it = pulses.rbegin(); it != pulses.rend(); ++it) {
        PulseSpec p = *it;
        switch (p.kind) {
            case PulseKind::Shelve:
                p.kind = PulseKind::Unshelve;
                break;
            case PulseKind::Unshelve:
                p.kind = PulseKind::Shelve;
                break;
            default:
                p.phase += kPi;
                p.detuning = -p.detuning;
                break;
        }
        out.push_back(p);
    }
    return out;
}

Sequence build_sequence_0n(int n, double phase_offset) {
    if (n < 1 || n > 8) {
        fail(ErrorCode::InvalidArgument, "0n sequences support 1 <= n <= 8");
    }
    Sequence s{FockPair(0, n), n > 2 ? 3 : 2, {}, {}, std::nullopt, std::nullopt};
    s.preparation.push_back(pulse(PulseKind::BSB, kPi / 2.0));
    if (n > 2) {
        s.preparation.push_back(pulse(PulseKind::Shelve, kPi));
    }
    append_ladder(s.preparation, 1, n);
    if (n > 2) {
        s.preparation.push_back(pulse(PulseKind::Unshelve, kPi));
    }
    s.analysis = inverse_pulses(s.preparation);
    s.analysis.back().phase += phase_offset;
    return s;
}

Sequence build_sequence_mn(int m, int n, double phase_offset) {
    require(m >= 0 && n >= 0, "Fock indices must be non-negative");
    const FockPair pair(m, n);
    const int lo = pair.m();
    const int hi = pair.n();
    if (pair.gap() > 2) {
        fail(ErrorCode::InvalidArgument, "mn sequences need |m - n| in {1, 2}");
    }
    Sequence s{pair, 2, {}, {}, std::nullopt, std::nullopt};
    append_ladder(s.preparation, 0, lo);
    if (lo % 2 == 1) {
        s.preparation.push_back(pulse(PulseKind::Carrier, kPi));
    }
    std::vector<PulseSpec> split;
    if (pair.gap() == 1) {
        split.push_back(pulse(PulseKind::Carrier, kPi / 2.0));
    } else {
        split.push_back(pulse(PulseKind::BSB, kPi / (2.0 * std::sqrt(lo + 1.0))));
    }
    // |e, hi-1> -> |g, hi> needs area sqrt(hi) = (2j+1) pi while |g, lo> sees area sqrt(lo) = 2 pi l.
    const double ratio = std::sqrt(static_cast<double>(lo) / hi);
    for (int j = 0; j < 200; ++j) {
        const double l = 0.5 * (2 * j + 1) * ratio;
        if (std::abs(l - std::round(l)) < 0.02) {
            s.mapping_j = j;
            s.mapping_l = l;
            break;
        }
    }
    if (!s.mapping_j) {
        fail(ErrorCode::InvalidArgument, "no mapping pulse with j < 200 satisfies the sideband condition for (" +
                                             pair.str() + ")");
    }
    split.push_back(pulse(PulseKind::RSB, (2 * *s.mapping_j + 1) * kPi / std::sqrt(static_cast<double>(hi))));
    s.preparation.insert(s.preparation.end(), split.begin(), split.end());
    s.analysis = inverse_pulses(split);
    s.analysis.back().phase += phase_offset;
    return s;
}

Sequence sequence_for(const FockPair &pair) {
    return pair.m() == 0 ? build_sequence_0n(pair.n()) : build_sequence_mn(pair.m(), pair.n());
}

SpinOscState apply_pulse(const SpinOscState &state, const PulseSpec &pulse) {
    require(state.amplitudes.size() == state.levels * state.dim, "spin-oscillator state shape mismatch");
    Eigen::MatrixXcd col = state.amplitudes;
    rotate_rows(col, pulse, state.levels, state.dim);
    return SpinOscState{state.levels, state.dim, col.col(0)};
}

Eigen::MatrixXcd apply_pulse(const Eigen::MatrixXcd &rho, const PulseSpec &pulse, int levels) {
    require(levels > 0 && rho.rows() == rho.cols() && rho.rows() % levels == 0, "joint matrix shape mismatch");
    const int dim = static_cast<int>(rho.rows() / levels);
    Eigen::MatrixXcd m = rho;
    rotate_rows(m, pulse, levels, dim);
    Eigen::MatrixXcd t = m.adjoint();
    rotate_rows(t, pulse, levels, dim);
    return t.adjoint();
}

void NoiseConfig::validate() const {
    for (double v : {initial_thermal_nbar, heating_rate, dephasing_rate, pulse_error, electronic_coherence_time,
                     pulse_duration}) {
        require(std::isfinite(v) && v >= 0.0, "noise parameters must be finite and non-negative");
    }
    require(shelving_contrast_factor > 0.0 && shelving_contrast_factor <= 1.0,
            "shelving contrast factor must be in (0, 1]");
    require(std::isfinite(motional_detuning), "motional detuning must be finite");
}

std::vector<double> uniform_phases(int count) {
    require(count >= 3, "a fringe needs at least 3 phases");
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(2.0 * kPi * i / count);
    }
    return out;
}

RamseyFringe fit_fringe(std::vector<FringePoint> points) {
    std::vector<double> distinct;
    for (const auto &p : points) {
        distinct.push_back(wrap_phase(p.phase));
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   distinct.end());
    if (distinct.size() < 3) {
        fail(ErrorCode::Fit, "fringe fit needs at least 3 distinct phases");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = std::cos(points[i].phase);
        x(i, 2) = std::sin(points[i].phase);
        y[i] = points[i].pe;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < 3) {
        fail(ErrorCode::Fit, "fringe design matrix is rank deficient");
    }
    const Eigen::VectorXd coef = qr.solve(y);
    const double b = coef[1];
    const double c = coef[2];
    const double amp = std::hypot(b, c);

    double err = 0.0;
    if (n > 3) {
        const double rss = (y - x * coef).squaredNorm();
        const double sigma2 = rss / static_cast<double>(n - 3);
        const Eigen::Matrix3d cov = sigma2 * (x.transpose() * x).inverse();
        if (amp > 0.0) {
            const double gb = 2.0 * b / amp;
            const double gc = 2.0 * c / amp;
            err = std::sqrt(std::max(0.0, gb * gb * cov(1, 1) + 2.0 * gb * gc * cov(1, 2) + gc * gc * cov(2, 2)));
        } else {
            err = 2.0 * std::sqrt(std::max(0.0, 0.5 * (cov(1, 1) + cov(2, 2))));
        }
    }
    RamseyFringe f;
    f.points = std::move(points);
    f.contrast = std::clamp(2.0 * amp, 0.0, 1.0);
    f.contrast_err = err;
    f.fit_phase_offset = wrap_phase(std::atan2(c, b));
    f.fit_mean = coef[0];
    return f;
}

int default_ramsey_dim(const FockPair &pair, const NoiseConfig &noise, double max_delay) {
    const double nbar = noise.initial_thermal_nbar + noise.heating_rate * std::max(0.0, max_delay);
    int extra = 8;
    if (nbar > 0.0) {
        const double q = nbar / (1.0 + nbar);
        extra += static_cast<int>(std::ceil(std::log(1e-9) / std::log(q))) + 2 * static_cast<int>(std::ceil(nbar));
    }
    return std::clamp(pair.n() + 8 + extra, pair.n() + 16, 4 * kDefaultTruncation);
}

int target_level(const Sequence &seq) {
    SpinOscState s = SpinOscState::ground(seq.levels, std::max(seq.pair.n() + 4, 8));
    for (const auto &p : seq.preparation) {
        s = apply_pulse(s, p);
    }
    int best = 0;
    double w = -1.0;
    for (int lev = 0; lev < seq.levels; ++lev) {
        const double v = std::norm(s.amplitudes[lev * s.dim + seq.pair.n()]);
        if (v > w) {
            w = v;
            best = lev;
        }
    }
    return best;
}

Eigen::MatrixXcd prepared_state(const Sequence &seq, const NoiseConfig &noise, int dim, uint64_t seed) {
    noise.validate();
    require(dim > seq.pair.n() + 1, "truncation too small for the sequence");
    std::mt19937_64 rng(derive_seed(seed, 0));
    Eigen::MatrixXcd rho = initial_joint(seq.levels, dim, noise.initial_thermal_nbar);
    for (const auto &p : jitter(seq.preparation, noise.pulse_error, rng)) {
        rho = apply_pulse(rho, p, seq.levels);
    }
    return rho;
}

Eigen::VectorXd motional_populations(const Eigen::MatrixXcd &joint, int levels) {
    require(levels > 0 && joint.rows() % levels == 0, "joint matrix shape mismatch");
    const Eigen::Index dim = joint.rows() / levels;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
    for (int lev = 0; lev < levels; ++lev) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            p[k] += joint(lev * dim + k, lev * dim + k).real();
        }
    }
    return p;
}

RamseyFringe run_ramsey(const Sequence &seq, double delay, const NoiseConfig &noise, const std::vector<double> &phases,
                        long shots, uint64_t seed, int dim) {
    noise.validate();
    require(std::isfinite(delay) && delay >= 0.0, "delay must be non-negative");
    require(!phases.empty(), "phase list must not be empty");
    require(shots >= 0, "shots must be non-negative");
    if (dim <= 0) {
        dim = default_ramsey_dim(seq.pair, noise, delay);
    }
    const int levels = seq.levels;

    std::mt19937_64 rng(derive_seed(seed, 0));
    Eigen::MatrixXcd rho = initial_joint(levels, dim, noise.initial_thermal_nbar);
    for (const auto &p : jitter(seq.preparation, noise.pulse_error, rng)) {
        rho = apply_pulse(rho, p, levels);
    }
    const std::vector<PulseSpec> analysis = jitter(seq.analysis, noise.pulse_error, rng);

    if (delay > 0.0) {
        rho = dephase_joint(rho, levels, noise.dephasing_rate * delay);
        if (noise.heating_rate > 0.0) {
            HeatingPropagator prop(dim, noise.heating_rate, delay);
            rho = prop.apply_joint(rho, levels);
            double tail = 0.0;
            for (int lev = 0; lev < levels; ++lev) {
                for (int k = dim - 8; k < dim; ++k) {
                    tail += rho(lev * dim + k, lev * dim + k).real();
                }
            }
            if (tail > 1e-6) {
                fail(ErrorCode::Truncation, "heating during the delay reaches the truncation edge");
            }
        }
        if (noise.motional_detuning != 0.0) {
            const double phi = noise.motional_detuning * delay;
            for (int a = 0; a < levels; ++a) {
                for (int b = 0; b < levels; ++b) {
                    for (int j = 0; j < dim; ++j) {
                        for (int k = 0; k < dim; ++k) {
                            rho(a * dim + j, b * dim + k) *= std::polar(1.0, -phi * (j - k));
                        }
                    }
                }
            }
        }
    }

    std::vector<double> pe;
    for (double phi : phases) {
        std::vector<PulseSpec> pulses = analysis;
        pulses.back().phase += phi;
        Eigen::MatrixXcd r = rho;
        for (const auto &p : pulses) {
            r = apply_pulse(r, p, levels);
        }
        pe.push_back(excited_probability(r, levels, dim));
    }

    double factor = 1.0;
    if (noise.electronic_coherence_time > 0.0) {
        const double t_sup = noise.pulse_duration * static_cast<double>(seq.preparation.size() + analysis.size());
        factor *= std::exp(-t_sup / noise.electronic_coherence_time);
    }
    const long shelves = std::count_if(seq.preparation.begin(), seq.preparation.end(),
                                       [](const PulseSpec &p) { return p.kind == PulseKind::Shelve; }) +
                         std::count_if(analysis.begin(), analysis.end(),
                                       [](const PulseSpec &p) { return p.kind == PulseKind::Shelve; });
    factor *= std::pow(noise.shelving_contrast_factor, static_cast<double>(shelves));
    if (factor != 1.0) {
        double mean = 0.0;
        for (double v : pe) {
            mean += v / pe.size();
        }
        for (double &v : pe) {
            v = std::clamp(mean + (v - mean) * factor, 0.0, 1.0);
        }
    }

    std::vector<FringePoint> points;
    for (size_t i = 0; i < phases.size(); ++i) {
        double v = pe[i];
        if (shots > 0) {
            std::mt19937_64 shot_rng(derive_seed(derive_seed(seed, 1), i));
            std::binomial_distribution<long> bin(shots, v);
            v = static_cast<double>(bin(shot_rng)) / static_cast<double>(shots);
        }
        points.push_back({phases[i], v, shots});
    }
    return fit_fringe(std::move(points));
}

std::vector<DecayPoint> decay_scan(const FockPair &pair, const std::vector<double> &delays, const NoiseConfig &noise,
                                   ThresholdKind kind, ThresholdCache &cache, const ScanOptions &opt) {
    require(!delays.empty(), "decay scan needs at least one delay");
    require(std::is_sorted(delays.begin(), delays.end()), "delays must be sorted ascending");
    const Sequence seq = sequence_for(pair);
    const int dim = opt.dim > 0 ? opt.dim : default_ramsey_dim(pair, noise, delays.back());
    const std::vector<double> phases = uniform_phases(opt.phases);
    const double thr = cache.get(kind, pair).value;
    std::vector<DecayPoint> out;
    for (size_t i = 0; i < delays.size(); ++i) {
        RamseyFringe f;
        try {
            f = run_ramsey(seq, delays[i], noise, phases, opt.shots, derive_seed(opt.seed, i), dim);
        } catch (const Error &e) {
            fail(e.code(), "pair (" + pair.str() + ") delay " + std::to_string(delays[i]) + " s: " + e.what());
        }
        DecayPoint p{delays[i], f.contrast, f.contrast_err, std::nullopt, f};
        if (f.contrast > 0.0) {
            p.depth = depth_from_threshold(std::min(f.contrast, 1.0), thr, pair);
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace qng
