// Copyright 2026 The tdoped Authors
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

#include "tdoped/magic.h"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <set>
#include <string>

#include "tdoped/errors.h"
#include "tdoped/parallel.h"

namespace tdoped {

namespace {

constexpr double kNormTolerance = 1e-10;

void check_qubit(const StateVector &psi, unsigned q) {
    if (q >= psi.n_qubits()) {
        throw ContractError("qubit " + std::to_string(q) + " out of range for " + std::to_string(psi.n_qubits()) +
                            "-qubit state");
    }
}

unsigned qubits_for_dimension(size_t d) {
    if (d == 0 || (d & (d - 1)) != 0) {
        throw DimensionError("state dimension " + std::to_string(d) + " is not a power of two");
    }
    return static_cast<unsigned>(std::countr_zero(d));
}

Eigen::Matrix4cd brick_matrix(const CliffordTableau &gate) {
    Eigen::Matrix4cd m = clifford_unitary(gate).matrix();
    return m;
}

// In-place fast Walsh-Hadamard transform.
void walsh_hadamard(std::vector<Amplitude> &f) {
    const size_t d = f.size();
    for (size_t h = 1; h < d; h <<= 1) {
        for (size_t i = 0; i < d; i += h << 1) {
            for (size_t j = i; j < i + h; ++j) {
                Amplitude a = f[j], b = f[j + h];
                f[j] = a + b;
                f[j + h] = a - b;
            }
        }
    }
}

double fourth_moment_direct(const StateVector &psi) {
    const unsigned n = psi.n_qubits();
    const uint64_t total = PauliString::count(n);
    const uint64_t low = (uint64_t{1} << n) - 1;
    double sum = 0;
    for (uint64_t idx = 0; idx < total; ++idx) {
        const uint64_t x = idx >> n, z = idx & low;
        const double e = detail::expectation_unchecked(basis_mask(x, n), basis_mask(z, n),
                                                       static_cast<unsigned>(std::popcount(x & z)), psi.amplitudes());
        const double e2 = e * e;
        sum += e2 * e2;
    }
    return sum;
}

double fourth_moment_fast(const StateVector &psi) {
    const size_t d = psi.dimension();
    std::vector<Amplitude> f(d);
    double sum = 0;
    for (size_t xb = 0; xb < d; ++xb) {
        for (size_t b = 0; b < d; ++b) f[b] = std::conj(psi[b ^ xb]) * psi[b];
        walsh_hadamard(f);
        for (size_t zb = 0; zb < d; ++zb) {
            double e;
            switch (std::popcount(xb & zb) & 3) {
                case 0:
                    e = f[zb].real();
                    break;
                case 1:
                    e = -f[zb].imag();
                    break;
                case 2:
                    e = -f[zb].real();
                    break;
                default:
                    e = f[zb].imag();
                    break;
            }
            const double e2 = e * e;
            sum += e2 * e2;
        }
    }
    return sum;
}

}  // namespace

StateVector::StateVector(std::vector<Amplitude> amplitudes) : n_(qubits_for_dimension(amplitudes.size())), amps_(std::move(amplitudes)) {
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
        throw ContractError("state vector is not normalized");
    }
}

StateVector StateVector::zero(unsigned n_qubits) {
    std::vector<Amplitude> a(size_t{1} << n_qubits, Amplitude{0});
    a[0] = 1;
    return StateVector(std::move(a));
}

StateVector StateVector::normalized(std::vector<Amplitude> amplitudes) {
    double norm = 0;
    for (const auto &a : amplitudes) norm += std::norm(a);
    if (!(norm > 0)) {
        throw ContractError("cannot normalize the zero vector");
    }
    const double s = 1 / std::sqrt(norm);
    for (auto &a : amplitudes) a *= s;
    return StateVector(std::move(amplitudes));
}

double StateVector::norm_squared() const {
    double norm = 0;
    for (const auto &a : amps_) norm += std::norm(a);
    return norm;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<Amplitude> out(a.dimension() * b.dimension());
    for (size_t i = 0; i < a.dimension(); ++i) {
        for (size_t j = 0; j < b.dimension(); ++j) out[i * b.dimension() + j] = a[i] * b[j];
    }
    return StateVector::normalized(std::move(out));
}

void apply_gate(StateVector &psi, unsigned q0, unsigned q1, const Eigen::Matrix4cd &gate) {
    check_qubit(psi, q0);
    check_qubit(psi, q1);
    if (q0 == q1) {
        throw ContractError("two-qubit gate on a single qubit");
    }
    const unsigned n = psi.n_qubits();
    const size_t b0 = size_t{1} << (n - 1 - q0);
    const size_t b1 = size_t{1} << (n - 1 - q1);
    auto amps = psi.mutable_amplitudes();
    for (size_t r = 0; r < amps.size(); ++r) {
        if (r & (b0 | b1)) continue;
        const size_t idx[4] = {r, r | b1, r | b0, r | b0 | b1};
        Amplitude in[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (int i = 0; i < 4; ++i) {
            amps[idx[i]] = gate(i, 0) * in[0] + gate(i, 1) * in[1] + gate(i, 2) * in[2] + gate(i, 3) * in[3];
        }
    }
}

void apply_gate(StateVector &psi, unsigned q, const Eigen::Matrix2cd &gate) {
    check_qubit(psi, q);
    const size_t bit = size_t{1} << (psi.n_qubits() - 1 - q);
    auto amps = psi.mutable_amplitudes();
    for (size_t r = 0; r < amps.size(); ++r) {
        if (r & bit) continue;
        const Amplitude a = amps[r], b = amps[r | bit];
        amps[r] = gate(0, 0) * a + gate(0, 1) * b;
        amps[r | bit] = gate(1, 0) * a + gate(1, 1) * b;
    }
}

void apply_t(StateVector &psi, unsigned q) {
    check_qubit(psi, q);
    static const Amplitude kPhase = std::polar(1.0, std::numbers::pi / 4);
    const size_t bit = size_t{1} << (psi.n_qubits() - 1 - q);
    auto amps = psi.mutable_amplitudes();
    for (size_t r = 0; r < amps.size(); ++r) {
        if (r & bit) amps[r] *= kPhase;
    }
}

void apply_clifford(StateVector &psi, const CliffordTableau &t) {
    if (t.n_qubits() != psi.n_qubits()) {
        throw DimensionError("tableau and state qubit counts differ");
    }
    psi = apply_unitary(clifford_unitary(t), psi);
}

void apply_circuit(StateVector &psi, const Circuit &c) {
    if (c.n_qubits() != psi.n_qubits()) {
        throw DimensionError("circuit and state qubit counts differ");
    }
    auto t = c.t_gates().begin();
    for (unsigned l = 0; l < c.depth(); ++l) {
        for (const auto &brick : c.layers()[l]) {
            apply_gate(psi, brick.first_qubit, brick.first_qubit + 1, brick_matrix(brick.gate));
        }
        for (; t != c.t_gates().end() && t->layer == l; ++t) apply_t(psi, t->qubit);
    }
}

StateVector apply_unitary(const DenseUnitary &u, const StateVector &psi) {
    if (static_cast<size_t>(u.dimension()) != psi.dimension()) {
        throw DimensionError("unitary and state dimensions differ");
    }
    Eigen::Map<const Eigen::VectorXcd> in(psi.amplitudes().data(), u.dimension());
    Eigen::VectorXcd out = u.matrix() * in;
    return StateVector::normalized(std::vector<Amplitude>(out.data(), out.data() + out.size()));
}

std::vector<double> string_distribution(const StateVector &psi) {
    const unsigned n = psi.n_qubits();
    const uint64_t total = PauliString::count(n);
    const double d = static_cast<double>(psi.dimension());
    std::vector<double> xi(total);
    for (uint64_t idx = 0; idx < total; ++idx) {
        const double e = expectation(PauliString::from_index(n, idx), psi.amplitudes());
        xi[idx] = e * e / d;
    }
    return xi;
}

double sre_upper_bound(unsigned n_qubits) {
    return std::log2((std::ldexp(1.0, static_cast<int>(n_qubits)) + 1) / 2);
}

double h_state_magic() { return 2 - std::log2(3.0); }

double sre(const StateVector &psi, SreMethod method) {
    if (std::abs(psi.norm_squared() - 1.0) > kNormTolerance) {
        throw ContractError("sre requires a unit-norm state");
    }
    const double moment = method == SreMethod::kFast ? fourth_moment_fast(psi) : fourth_moment_direct(psi);
    // sum Xi^2 = moment / d^2, so M2 = log2(d) - log2(moment).
    const double m2 = static_cast<double>(psi.n_qubits()) - std::log2(moment);
    return std::clamp(m2, 0.0, sre_upper_bound(psi.n_qubits()));
}

std::vector<StateVector> single_qubit_stabilizer_states() {
    const double r = 1 / std::numbers::sqrt2;
    const Amplitude i{0, 1};
    return {StateVector({1, 0}), StateVector({0, 1}), StateVector({r, r}),
            StateVector({r, -r}), StateVector({r, r * i}), StateVector({r, -r * i})};
}

StateVector random_stabilizer_state(unsigned n_qubits, Rng &rng) {
    if (n_qubits == 1) {
        static const auto kStates = single_qubit_stabilizer_states();
        std::uniform_int_distribution<size_t> pick(0, kStates.size() - 1);
        return kStates[pick(rng)];
    }
    auto prep = build_brickwall(n_qubits, default_depth(n_qubits), 0, rng);
    auto psi = StateVector::zero(n_qubits);
    apply_circuit(psi, prep);
    return psi;
}

void MagicDistribution::merge(const MagicDistribution &other) {
    if (n_ == 0) n_ = other.n_;
    if (other.n_ != n_ && !other.values_.empty()) {
        throw DimensionError("merging magic distributions of different sizes");
    }
    values_.insert(values_.end(), other.values_.begin(), other.values_.end());
}

double MagicDistribution::mean() const {
    if (values_.empty()) throw ContractError("mean of an empty magic distribution");
    double s = 0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

double MagicDistribution::stddev() const {
    if (values_.size() < 2) return 0;
    const double mu = mean();
    double s = 0;
    for (double v : values_) s += (v - mu) * (v - mu);
    return std::sqrt(s / static_cast<double>(values_.size() - 1));
}

double MagicDistribution::stderr_mean() const {
    if (values_.size() < 2) return 0;
    return stddev() / std::sqrt(static_cast<double>(values_.size()));
}

std::vector<std::pair<double, uint64_t>> MagicDistribution::distinct_values() const {
    std::vector<double> sorted = values_;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, uint64_t>> out;
    for (double v : sorted) {
        if (!out.empty() && v - out.back().first <= kDistinctTolerance) {
            ++out.back().second;
        } else {
            out.emplace_back(v, 1);
        }
    }
    return out;
}

std::vector<std::pair<double, double>> MagicDistribution::density_histogram(double bin_width) const {
    std::vector<std::pair<double, double>> out;
    if (values_.empty()) return out;
    const double ns = static_cast<double>(values_.size());
    const double n = static_cast<double>(n_);
    auto distinct = distinct_values();
    if (distinct.size() <= kMaxDiscreteValues) {
        for (const auto &[v, c] : distinct) out.emplace_back(v / n, static_cast<double>(c) / ns);
        return out;
    }
    if (!(bin_width > 0)) throw ContractError("bin width must be positive");
    const double top = sre_upper_bound(n_) / n;
    const auto bins = static_cast<size_t>(std::ceil(top / bin_width));
    std::vector<uint64_t> counts(bins, 0);
    for (double v : values_) {
        auto k = static_cast<size_t>(v / n / bin_width);
        ++counts[std::min(k, bins - 1)];
    }
    for (size_t k = 0; k < bins; ++k) {
        out.emplace_back((static_cast<double>(k) + 0.5) * bin_width, static_cast<double>(counts[k]) / (ns * bin_width));
    }
    return out;
}

MagicSample magic_sample(const MagicEnsembleOptions &opts, uint64_t index) {
    const uint64_t seed = derive_seed(opts.seed, "magic", index);
    Rng rng(seed);
    StateVector psi = random_stabilizer_state(opts.n_qubits, rng);
    Circuit u = build_brickwall(opts.n_qubits, opts.depth, opts.n_t_gates, rng, opts.seed);
    apply_circuit(psi, u);
    MagicSample s;
    s.m2_total = sre(psi, opts.method);
    s.density = s.m2_total / opts.n_qubits;
    s.seed = seed;
    s.n_qubits = opts.n_qubits;
    s.depth = opts.depth;
    s.n_t_gates = opts.n_t_gates;
    return s;
}

MagicDistribution sample_magic_distribution(const MagicEnsembleOptions &opts) {
    if (opts.n_qubits == 0 || opts.samples == 0) {
        throw ContractError("magic sampling needs N >= 1 and at least one sample");
    }
    if (uint64_t{opts.n_t_gates} > uint64_t{opts.depth} * opts.n_qubits) {
        throw CapacityError("too many T gates for the circuit grid");
    }
    std::vector<double> values(opts.samples);
    parallel_for(opts.samples, opts.workers, [&](size_t i) { values[i] = magic_sample(opts, i).m2_total; });
    MagicDistribution dist(opts.n_qubits);
    for (double v : values) dist.add(v);
    return dist;
}

namespace {

template <class Apply>
PowerEstimate power_estimate(unsigned n_qubits, uint64_t n_states, Rng &rng, SreMethod method, Apply &&apply) {
    std::vector<double> values;
    PowerEstimate est;
    if (n_qubits == 1) {
        for (const auto &s : single_qubit_stabilizer_states()) values.push_back(sre(apply(s), method));
        est.exact = true;
    } else {
        if (n_states < 2) {
            throw ContractError("non-stabilizing power estimate needs at least 2 states");
        }
        values.reserve(n_states);
        for (uint64_t k = 0; k < n_states; ++k) {
            values.push_back(sre(apply(random_stabilizer_state(n_qubits, rng)), method));
        }
    }
    double sum = 0;
    for (double v : values) sum += v;
    est.n_states = values.size();
    est.mean = sum / static_cast<double>(values.size());
    if (!est.exact) {
        double ss = 0;
        for (double v : values) ss += (v - est.mean) * (v - est.mean);
        est.stderr_mean = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
    }
    return est;
}

}  // namespace

PowerEstimate non_stabilizing_power_mc(const Circuit &u, uint64_t n_states, Rng &rng, SreMethod method) {
    return power_estimate(u.n_qubits(), n_states, rng, method, [&](const StateVector &s) {
        StateVector out = s;
        apply_circuit(out, u);
        return out;
    });
}

PowerEstimate non_stabilizing_power_mc(const DenseUnitary &u, uint64_t n_states, Rng &rng, SreMethod method) {
    const unsigned n = qubits_for_dimension(static_cast<size_t>(u.dimension()));
    return power_estimate(n, n_states, rng, method, [&](const StateVector &s) { return apply_unitary(u, s); });
}

MagicDistribution haar_magic_baseline(unsigned n_qubits, uint64_t samples, uint64_t seed, unsigned workers,
                                      SreMethod method) {
    if (n_qubits == 0 || samples == 0) {
        throw ContractError("Haar baseline needs N >= 1 and at least one sample");
    }
    const auto d = Eigen::Index{1} << n_qubits;
    std::vector<double> values(samples);
    parallel_for(samples, workers, [&](size_t i) {
        Rng rng = sample_stream(seed, "haar-baseline", i);
        DenseUnitary u = haar_unitary(d, rng);
        values[i] = sre(apply_unitary(u, StateVector::zero(n_qubits)), method);
    });
    MagicDistribution dist(n_qubits);
    for (double v : values) dist.add(v);
    return dist;
}

double haar_density_lower_bound(unsigned n_qubits) {
    return std::log2((std::ldexp(1.0, static_cast<int>(n_qubits)) + 3) / 4) / n_qubits;
}

StateVector bloch_state(double theta, double phi) {
    return StateVector::normalized({std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)});
}

double bloch_sre(double theta, double phi) { return sre(bloch_state(theta, phi)); }

BlochMap bloch_magic_map(unsigned resolution, size_t density_bins) {
    if (resolution < 2 || density_bins == 0) {
        throw ContractError("Bloch map needs resolution >= 2 and at least one density bin");
    }
    BlochMap map;
    map.resolution = resolution;
    const double step = std::numbers::pi / resolution;
    const double top = sre_upper_bound(1);
    map.density.assign(density_bins, 0.0);
    map.density_bin_width = top / static_cast<double>(density_bins);
    double weight_sum = 0, weighted = 0;
    for (unsigned j = 0; j <= resolution; ++j) {
        const double theta = j * step;
        const double w = std::sin(theta);
        for (unsigned k = 0; k < 2 * resolution; ++k) {
            const double phi = k * step;
            const double m2 = bloch_sre(theta, phi);
            map.nodes.push_back({theta, phi, m2});
            map.max_m2 = std::max(map.max_m2, m2);
            weight_sum += w;
            weighted += w * m2;
            auto b = std::min(static_cast<size_t>(m2 / map.density_bin_width), density_bins - 1);
            map.density[b] += w;
        }
    }
    map.haar_mean = weighted / weight_sum;
    for (auto &v : map.density) v /= weight_sum * map.density_bin_width;
    return map;
}

StateVector appendix_a_example_state() {
    const Amplitude i{0, 1};
    return StateVector::normalized({1, 1, 1, i, 1.0 + i, 0, 0, 0});
}

namespace {

double negative_sre_2q(const gsl_vector *v, void *) {
    std::vector<Amplitude> a(4);
    double norm = 0;
    for (size_t k = 0; k < 4; ++k) {
        a[k] = Amplitude(gsl_vector_get(v, 2 * k), gsl_vector_get(v, 2 * k + 1));
        norm += std::norm(a[k]);
    }
    if (norm < 1e-12) return 0;
    return -sre(StateVector::normalized(std::move(a)));
}

double maximize_two_qubit_sre(Rng &rng, unsigned restarts) {
    using MinimizerPtr = std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)>;
    using VectorPtr = std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)>;
    std::normal_distribution<double> gauss(0.0, 1.0);
    gsl_multimin_function fn{&negative_sre_2q, 8, nullptr};
    double best = 0;
    for (unsigned r = 0; r < restarts; ++r) {
        MinimizerPtr s(gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 8),
                       &gsl_multimin_fminimizer_free);
        VectorPtr x(gsl_vector_alloc(8), &gsl_vector_free);
        VectorPtr step(gsl_vector_alloc(8), &gsl_vector_free);
        for (size_t k = 0; k < 8; ++k) gsl_vector_set(x.get(), k, gauss(rng));
        gsl_vector_set_all(step.get(), 0.2);
        gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());
        for (int iter = 0; iter < 5000; ++iter) {
            if (gsl_multimin_fminimizer_iterate(s.get()) != 0) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), 1e-12) == GSL_SUCCESS) break;
        }
        best = std::max(best, -gsl_multimin_fminimizer_minimum(s.get()));
    }
    return best;
}

}  // namespace

AppendixAReport verify_appendix_a(uint64_t seed, unsigned n2_restarts) {
    AppendixAReport report;

    const double third = 1 / std::sqrt(3.0);
    report.n1_sre = bloch_sre(std::acos(third), std::numbers::pi / 4);
    report.n1_target = sre_upper_bound(1);
    report.n1_pass = std::abs(report.n1_sre - report.n1_target) < 1e-9;

    const Amplitude coeffs[4] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    report.n3_target = std::log2(4.5);
    report.n3_example_sre = sre(appendix_a_example_state());
    std::set<std::vector<long long>> up_to_phase;
    for (uint32_t code = 1; code < (1u << 16); ++code) {
        std::vector<Amplitude> a(8);
        for (unsigned j = 0; j < 8; ++j) a[j] = coeffs[(code >> (2 * j)) & 3];
        auto psi = StateVector::normalized(std::move(a));
        ++report.n3_tuples;
        if (std::abs(sre(psi) - report.n3_target) > 1e-9) continue;
        ++report.n3_maximal_tuples;
        // Canonical representative: first nonzero amplitude real positive.
        Amplitude phase{1, 0};
        for (const auto &v : psi.amplitudes()) {
            if (std::abs(v) > 1e-12) {
                phase = std::conj(v) / std::abs(v);
                break;
            }
        }
        std::vector<long long> key;
        for (const auto &v : psi.amplitudes()) {
            Amplitude c = v * phase;
            key.push_back(std::llround(c.real() * 1e8));
            key.push_back(std::llround(c.imag() * 1e8));
        }
        up_to_phase.insert(std::move(key));
    }
    report.n3_maximal_up_to_phase = up_to_phase.size();

    Rng rng = sample_stream(seed, "appendix-a", 0);
    report.n2_restarts = n2_restarts;
    report.n2_bound = sre_upper_bound(2);
    report.n2_max_found = maximize_two_qubit_sre(rng, n2_restarts);
    report.n2_margin = report.n2_bound - report.n2_max_found;
    return report;
}

}  // namespace tdoped
