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

#ifndef TDOPED_ORBITS_H
#define TDOPED_ORBITS_H

#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "tdoped/tableau.h"

namespace tdoped {

/// Orbit length L and closing sign tau (+1 or -1).
struct OrbitKey {
    uint64_t length = 1;
    int parity = 1;

    friend auto operator<=>(const OrbitKey &, const OrbitKey &) = default;
};

/// Number of distinct orbits N_C(L, tau) of one Clifford's conjugation action
/// on the 4^N unsigned Pauli strings.
class OrbitCensus {
   public:
    explicit OrbitCensus(unsigned n_qubits = 0) : n_(n_qubits) {}

    unsigned n_qubits() const { return n_; }
    const std::map<OrbitKey, uint64_t> &orbits() const { return orbits_; }
    uint64_t orbit_count(OrbitKey key) const;
    /// L * N_C(L, tau).
    uint64_t string_count(OrbitKey key) const { return key.length * orbit_count(key); }
    /// Sum of L * N_C over all keys; equals 4^N for a complete census.
    uint64_t total_strings() const;

    void add_orbit(OrbitKey key, uint64_t count = 1) { orbits_[key] += count; }

    friend bool operator==(const OrbitCensus &, const OrbitCensus &) = default;

   private:
    unsigned n_;
    std::map<OrbitKey, uint64_t> orbits_;
};

/// Largest qubit count decompose_orbits accepts (bitmap of 4^N bits).
inline constexpr unsigned kMaxOrbitQubits = 15;

/// Walks every unsigned string once, following the conjugation map until the
/// string recurs. Throws ResourceError above kMaxOrbitQubits.
OrbitCensus decompose_orbits(const CliffordTableau &t);

/// Largest L in the census. Throws ContractError on an empty census.
uint64_t max_orbit_length(const OrbitCensus &census);

/// Ensemble aggregate of orbit censuses.
///
/// Totals are kept as exact integers, so merging is commutative and the
/// derived probabilities do not depend on merge order.
class OrbitEnsemble {
   public:
    explicit OrbitEnsemble(unsigned n_qubits = 0, uint64_t seed = 0) : n_(n_qubits), seed_(seed) {}

    void add(const OrbitCensus &census);
    void merge(const OrbitEnsemble &other);

    unsigned n_qubits() const { return n_; }
    uint64_t samples() const { return samples_; }
    uint64_t seed() const { return seed_; }
    uint64_t max_length() const { return max_length_; }
    /// Sum over samples of L * N_C(L, tau).
    const std::map<OrbitKey, uint64_t> &string_totals() const { return string_totals_; }
    /// Sum over samples of N_C(L, tau).
    const std::map<OrbitKey, uint64_t> &orbit_totals() const { return orbit_totals_; }

    /// P(L, tau) = <L N_C(L, tau) / 4^N>.
    double probability(OrbitKey key) const;
    /// P(L) = sum over tau.
    std::map<uint64_t, double> parity_integrated() const;

   private:
    unsigned n_;
    uint64_t seed_;
    uint64_t samples_ = 0;
    uint64_t max_length_ = 0;
    std::map<OrbitKey, uint64_t> string_totals_;
    std::map<OrbitKey, uint64_t> orbit_totals_;
};

/// Right-continuous staircase I(x), x = L / L_max.
struct Staircase {
    double l_max = 1;
    /// (x, I(x)) at every jump, x increasing.
    std::vector<std::pair<double, double>> jumps;

    double operator()(double x) const;
    /// Height of the jump located at x (0 if none within tol).
    double jump_at(double x, double tol = 1e-12) const;
};

/// Integrated probability of parity-summed P(L) against L / l_max. With
/// l_max == 0 the scale is max(2^{N+1}, largest observed L).
Staircase integrated_probability(const OrbitEnsemble &ensemble, uint64_t l_max = 0);

/// Eigenphases of the conjugation superoperator: for each orbit (L, +1)
/// the phases 2 pi m / L, m = 0..L-1; for (L, -1) m = 1/2, ..., L - 1/2.
/// Returned sorted in [0, 2 pi); 4^N entries.
std::vector<double> orbit_eigenphases(const OrbitCensus &census);
std::vector<double> orbit_eigenphases(const CliffordTableau &t);

}  // namespace tdoped

#endif
