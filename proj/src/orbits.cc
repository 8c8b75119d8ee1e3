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

#include "tdoped/orbits.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tdoped/errors.h"

namespace tdoped {

uint64_t OrbitCensus::orbit_count(OrbitKey key) const {
    auto it = orbits_.find(key);
    return it == orbits_.end() ? 0 : it->second;
}

uint64_t OrbitCensus::total_strings() const {
    uint64_t total = 0;
    for (const auto &[key, count] : orbits_) total += key.length * count;
    return total;
}

OrbitCensus decompose_orbits(const CliffordTableau &t) {
    const unsigned n = t.n_qubits();
    if (n > kMaxOrbitQubits) {
        throw ResourceError("orbit decomposition is capped at " + std::to_string(kMaxOrbitQubits) + " qubits");
    }
    const ConjugationTable table(t);
    const uint64_t total = PauliString::count(n);
    const uint64_t low = (uint64_t{1} << n) - 1;
    std::vector<uint64_t> visited((total + 63) / 64, 0);
    auto test_and_set = [&](uint64_t i) {
        uint64_t &w = visited[i >> 6];
        uint64_t bit = uint64_t{1} << (i & 63);
        bool was = w & bit;
        w |= bit;
        return was;
    };

    OrbitCensus census(n);
    uint64_t marked = 0;
    for (uint64_t start = 0; start < total; ++start) {
        if (test_and_set(start)) continue;
        const uint64_t x0 = start >> n, z0 = start & low;
        uint64_t x = x0, z = z0;
        bool negative = false;
        uint64_t length = 0;
        while (true) {
            uint64_t nx, nz;
            bool flip;
            table.conjugate(x, z, nx, nz, flip);
            negative ^= flip;
            ++length;
            if (nx == x0 && nz == z0) break;
            if (test_and_set((nx << n) | nz) || length >= total) {
                throw InternalError("conjugation orbit failed to close; tableau is not a bijection");
            }
            x = nx;
            z = nz;
        }
        marked += length;
        census.add_orbit(OrbitKey{length, negative ? -1 : 1});
    }
    if (marked != total) {
        throw InternalError("orbit walk did not cover every string");
    }
    return census;
}

uint64_t max_orbit_length(const OrbitCensus &census) {
    if (census.orbits().empty()) {
        throw ContractError("max_orbit_length of an empty census");
    }
    return census.orbits().rbegin()->first.length;
}

void OrbitEnsemble::add(const OrbitCensus &census) {
    if (samples_ == 0 && n_ == 0) n_ = census.n_qubits();
    if (census.n_qubits() != n_) {
        throw DimensionError("census qubit count differs from ensemble");
    }
    for (const auto &[key, count] : census.orbits()) {
        orbit_totals_[key] += count;
        string_totals_[key] += key.length * count;
    }
    if (!census.orbits().empty()) max_length_ = std::max(max_length_, max_orbit_length(census));
    ++samples_;
}

void OrbitEnsemble::merge(const OrbitEnsemble &other) {
    if (other.samples_ == 0) return;
    if (samples_ == 0 && n_ == 0) n_ = other.n_;
    if (other.n_ != n_) {
        throw DimensionError("merging ensembles of different qubit counts");
    }
    for (const auto &[key, v] : other.orbit_totals_) orbit_totals_[key] += v;
    for (const auto &[key, v] : other.string_totals_) string_totals_[key] += v;
    samples_ += other.samples_;
    max_length_ = std::max(max_length_, other.max_length_);
}

double OrbitEnsemble::probability(OrbitKey key) const {
    if (samples_ == 0) {
        throw ContractError("probability of an empty ensemble");
    }
    auto it = string_totals_.find(key);
    if (it == string_totals_.end()) return 0.0;
    return static_cast<double>(it->second) / (static_cast<double>(samples_) * static_cast<double>(PauliString::count(n_)));
}

std::map<uint64_t, double> OrbitEnsemble::parity_integrated() const {
    std::map<uint64_t, uint64_t> sums;
    for (const auto &[key, v] : string_totals_) sums[key.length] += v;
    std::map<uint64_t, double> out;
    double denom = static_cast<double>(samples_) * static_cast<double>(PauliString::count(n_));
    for (const auto &[l, v] : sums) out[l] = static_cast<double>(v) / denom;
    return out;
}

double Staircase::operator()(double x) const {
    double value = 0;
    for (const auto &[jx, iv] : jumps) {
        if (jx <= x) value = iv;
        else break;
    }
    return value;
}

double Staircase::jump_at(double x, double tol) const {
    double before = 0;
    for (const auto &[jx, iv] : jumps) {
        if (std::abs(jx - x) <= tol) return iv - before;
        if (jx > x) break;
        before = iv;
    }
    return 0;
}

Staircase integrated_probability(const OrbitEnsemble &ensemble, uint64_t l_max) {
    if (ensemble.samples() == 0) {
        throw ContractError("integrated_probability of an empty ensemble");
    }
    if (l_max == 0) {
        l_max = std::max<uint64_t>(uint64_t{2} << ensemble.n_qubits(), ensemble.max_length());
    }
    if (ensemble.max_length() > l_max) {
        throw ContractError("l_max is smaller than the longest observed orbit");
    }
    // Exact integer running sum, converted once per jump, so I(1) == 1.
    std::map<uint64_t, uint64_t> sums;
    for (const auto &[key, v] : ensemble.string_totals()) sums[key.length] += v;
    const double denom = static_cast<double>(ensemble.samples()) * static_cast<double>(PauliString::count(ensemble.n_qubits()));
    Staircase s;
    s.l_max = static_cast<double>(l_max);
    uint64_t running = 0;
    for (const auto &[l, v] : sums) {
        running += v;
        s.jumps.emplace_back(static_cast<double>(l) / s.l_max, static_cast<double>(running) / denom);
    }
    return s;
}

std::vector<double> orbit_eigenphases(const OrbitCensus &census) {
    std::vector<double> phases;
    phases.reserve(census.total_strings());
    constexpr double kTwoPi = 2 * std::numbers::pi;
    for (const auto &[key, count] : census.orbits()) {
        const double offset = key.parity < 0 ? 0.5 : 0.0;
        for (uint64_t m = 0; m < key.length; ++m) {
            double theta = kTwoPi * (static_cast<double>(m) + offset) / static_cast<double>(key.length);
            phases.insert(phases.end(), count, theta);
        }
    }
    std::sort(phases.begin(), phases.end());
    return phases;
}

std::vector<double> orbit_eigenphases(const CliffordTableau &t) { return orbit_eigenphases(decompose_orbits(t)); }

}  // namespace tdoped
