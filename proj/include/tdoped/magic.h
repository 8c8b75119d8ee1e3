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

#ifndef TDOPED_MAGIC_H
#define TDOPED_MAGIC_H

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tdoped/circuit.h"
#include "tdoped/pauli.h"
#include "tdoped/rng.h"
#include "tdoped/spectra.h"

namespace tdoped {

/// Unit-norm state on N qubits; qubit 0 is the most significant index bit.
class StateVector {
   public:
    StateVector() = default;
    /// Throws ContractError unless the norm is 1 within 1e-10 and the size is 2^N.
    explicit StateVector(std::vector<Amplitude> amplitudes);

    /// |0...0>.
    static StateVector zero(unsigned n_qubits);
    /// Normalizes `amplitudes` first; throws ContractError for the zero vector.
    static StateVector normalized(std::vector<Amplitude> amplitudes);

    unsigned n_qubits() const { return n_; }
    size_t dimension() const { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> mutable_amplitudes() { return amps_; }
    const Amplitude &operator[](size_t i) const { return amps_[i]; }
    double norm_squared() const;

   private:
    unsigned n_ = 0;
    std::vector<Amplitude> amps_;
};

/// Tensor product with `a` on the leading (lower-numbered) qubits.
StateVector tensor(const StateVector &a, const StateVector &b);

/// Applies a 4x4 gate on (q0, q1); local index is 2*bit(q0) + bit(q1).
void apply_gate(StateVector &psi, unsigned q0, unsigned q1, const Eigen::Matrix4cd &gate);
void apply_gate(StateVector &psi, unsigned q, const Eigen::Matrix2cd &gate);
/// T = diag(1, e^{i pi/4}) on qubit q.
void apply_t(StateVector &psi, unsigned q);
/// Applies a Clifford tableau (any width) through its dense matrix.
void apply_clifford(StateVector &psi, const CliffordTableau &t);
/// Runs every layer: bricks, then the layer's T gates.
void apply_circuit(StateVector &psi, const Circuit &c);
/// U psi for a dense unitary of matching dimension.
StateVector apply_unitary(const DenseUnitary &u, const StateVector &psi);

/// Xi(S) = <psi|S|psi>^2 / d indexed by PauliString::index().
std::vector<double> string_distribution(const StateVector &psi);

enum class SreMethod {
    kDirect,  // one expectation per string, O(8^N)
    kFast,    // Walsh-Hadamard transform per X pattern, O(4^N N)
};

/// Stabilizer 2-Renyi entropy M2 = -log2 sum_S Xi(S)^2 - log2 d, in bits,
/// clamped into [0, log2((d+1)/2)].
double sre(const StateVector &psi, SreMethod method = SreMethod::kDirect);

/// log2((d+1)/2) for d = 2^N.
double sre_upper_bound(unsigned n_qubits);
/// 2 - log2(3): SRE of the H-type state TH|0>.
double h_state_magic();

/// Random stabilizer state C|0...0> with C a depth-5N brick-wall Clifford
/// circuit; for N = 1 one of the six single-qubit stabilizer states.
StateVector random_stabilizer_state(unsigned n_qubits, Rng &rng);
/// The six single-qubit stabilizer states.
std::vector<StateVector> single_qubit_stabilizer_states();

struct MagicSample {
    double m2_total = 0;  // M2 in bits
    double density = 0;   // M2 / N
    uint64_t seed = 0;
    unsigned n_qubits = 0;
    unsigned depth = 0;
    unsigned n_t_gates = 0;
};

/// Ensemble of SRE values with summary statistics.
class MagicDistribution {
   public:
    /// Up to this many distinct values the distribution is tallied exactly.
    static constexpr size_t kMaxDiscreteValues = 64;
    /// Values closer than this are the same discrete value.
    static constexpr double kDistinctTolerance = 1e-9;

    MagicDistribution() = default;
    explicit MagicDistribution(unsigned n_qubits) : n_(n_qubits) {}

    void add(double m2_total) { values_.push_back(m2_total); }
    void merge(const MagicDistribution &other);

    unsigned n_qubits() const { return n_; }
    size_t samples() const { return values_.size(); }
    const std::vector<double> &values() const { return values_; }
    /// <M2>.
    double mean() const;
    double stddev() const;
    double stderr_mean() const;
    /// <m2> = <M2> / N.
    double mean_density() const { return mean() / n_; }
    double stderr_density() const { return stderr_mean() / n_; }

    /// Sorted distinct M2 values with counts (clustered at kDistinctTolerance).
    std::vector<std::pair<double, uint64_t>> distinct_values() const;
    bool is_discrete() const { return distinct_values().size() <= kMaxDiscreteValues; }

    /// rho(m2): exact (m2, probability) pairs when discrete, otherwise
    /// (bin center, density) over [0, max] with the given bin width.
    std::vector<std::pair<double, double>> density_histogram(double bin_width = 0.01) const;

   private:
    unsigned n_ = 0;
    std::vector<double> values_;
};

struct MagicEnsembleOptions {
    unsigned n_qubits = 2;
    unsigned depth = 10;
    unsigned n_t_gates = 0;
    uint64_t samples = 1;
    uint64_t seed = 0;
    unsigned workers = 1;
    SreMethod method = SreMethod::kDirect;
};

/// Per sample: random stabilizer input, fresh Clifford+T circuit, SRE of the output.
MagicDistribution sample_magic_distribution(const MagicEnsembleOptions &opts);
MagicSample magic_sample(const MagicEnsembleOptions &opts, uint64_t index);

struct PowerEstimate {
    double mean = 0;
    double stderr_mean = 0;
    uint64_t n_states = 0;
    bool exact = false;
};

/// Monte Carlo non-stabilizing power: mean SRE of U|s> over random stabilizer
/// states |s>. For one qubit the six stabilizer states are averaged exactly.
/// Throws ContractError if n_states < 2 (ignored for one qubit).
PowerEstimate non_stabilizing_power_mc(const Circuit &u, uint64_t n_states, Rng &rng,
                                       SreMethod method = SreMethod::kDirect);
PowerEstimate non_stabilizing_power_mc(const DenseUnitary &u, uint64_t n_states, Rng &rng,
                                       SreMethod method = SreMethod::kDirect);

/// SRE of Haar-random states U|0...0>, U from haar_unitary.
MagicDistribution haar_magic_baseline(unsigned n_qubits, uint64_t samples, uint64_t seed, unsigned workers = 1,
                                      SreMethod method = SreMethod::kDirect);
/// (1/N) log2((2^N + 3) / 4), lower bound on the Haar-typical magic density.
double haar_density_lower_bound(unsigned n_qubits);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
StateVector bloch_state(double theta, double phi);
double bloch_sre(double theta, double phi);

struct BlochNode {
    double theta;
    double phi;
    double m2;
};

struct BlochMap {
    unsigned resolution = 0;
    std::vector<BlochNode> nodes;  // theta-major
    double haar_mean = 0;          // sin(theta)-weighted mean of M2
    double max_m2 = 0;
    /// sin(theta)-weighted density of M2 over [0, log2(3/2)].
    std::vector<double> density;
    double density_bin_width = 0;
};

/// theta in {0, pi/r, ..., pi}, phi in {0, pi/r, ..., 2pi - pi/r}.
BlochMap bloch_magic_map(unsigned resolution, size_t density_bins = 100);

struct AppendixAReport {
    double n1_sre = 0;
    double n1_target = 0;
    bool n1_pass = false;

    uint64_t n3_tuples = 0;               // nonzero coefficient tuples examined
    uint64_t n3_maximal_tuples = 0;       // tuples reaching log2(9/2)
    uint64_t n3_maximal_up_to_phase = 0;  // distinct states modulo global phase
    double n3_target = 0;
    double n3_example_sre = 0;

    double n2_max_found = 0;
    double n2_bound = 0;
    double n2_margin = 0;
    unsigned n2_restarts = 0;
};

/// Checks the maximal-magic constructions for N = 1, 2, 3.
AppendixAReport verify_appendix_a(uint64_t seed = 1, unsigned n2_restarts = 64);

/// (|000> + |001> + |010> + i|011> + (1+i)|100>) / sqrt(6).
StateVector appendix_a_example_state();

}  // namespace tdoped

#endif
