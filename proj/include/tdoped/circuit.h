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

#ifndef TDOPED_CIRCUIT_H
#define TDOPED_CIRCUIT_H

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "tdoped/errors.h"
#include "tdoped/tableau.h"

namespace tdoped {

/// 2-qubit Clifford acting on qubits (first_qubit, first_qubit + 1).
struct Brick {
    unsigned first_qubit = 0;
    CliffordTableau gate;

    friend bool operator==(const Brick &, const Brick &) = default;
};

/// A T gate after the Clifford layer `layer`, on `qubit`.
struct TPlacement {
    unsigned layer = 0;
    unsigned qubit = 0;

    friend auto operator<=>(const TPlacement &, const TPlacement &) = default;
};

/// Brick-wall Clifford+T circuit with open boundaries.
///
/// Layer l (0-based) holds bricks starting on qubits with parity l % 2, so
/// the first layer pairs (0,1),(2,3),... and the second (1,2),(3,4),....
/// A layer may omit bricks. T gates placed in layer l act after its bricks.
class Circuit {
   public:
    Circuit() = default;
    /// Validates pairing, qubit ranges, and T placement uniqueness; t_gates are stored sorted.
    Circuit(unsigned n_qubits, std::vector<std::vector<Brick>> layers, std::vector<TPlacement> t_gates,
            uint64_t seed = 0);

    unsigned n_qubits() const { return n_; }
    unsigned depth() const { return static_cast<unsigned>(layers_.size()); }
    const std::vector<std::vector<Brick>> &layers() const { return layers_; }
    const std::vector<TPlacement> &t_gates() const { return t_gates_; }
    /// Master seed recorded as provenance; 0 for hand-built circuits.
    uint64_t seed() const { return seed_; }

    friend bool operator==(const Circuit &, const Circuit &) = default;

   private:
    unsigned n_ = 0;
    std::vector<std::vector<Brick>> layers_;
    std::vector<TPlacement> t_gates_;
    uint64_t seed_ = 0;
};

/// Default depth D = 5N.
inline unsigned default_depth(unsigned n_qubits) { return 5 * n_qubits; }

/// Random brick-wall circuit: every allowed brick is an independent uniform
/// 2-qubit Clifford, then n_t_gates distinct (layer, qubit) cells are drawn
/// uniformly without replacement. Throws CapacityError if
/// n_t_gates > depth * n_qubits.
template <class Rng>
Circuit build_brickwall(unsigned n_qubits, unsigned depth, unsigned n_t_gates, Rng &rng, uint64_t seed = 0);

/// Clifford part of the circuit (T gates ignored), folded layer by layer.
CliffordTableau circuit_clifford_part(const Circuit &c);

/// JSON text: n_qubits, depth, seed, layers (qubit pair + images X0,Z0,X1,Z1), t_gates.
std::string circuit_to_json(const Circuit &c);
/// Inverse of circuit_to_json. Throws ContractError on malformed input.
Circuit circuit_from_json(const std::string &text);

/// Applies one brick-wall layer's conjugation to `p` in place.
void conjugate_by_layer(const std::vector<Brick> &layer, SignedPauli &p);

template <class Rng>
Circuit build_brickwall(unsigned n_qubits, unsigned depth, unsigned n_t_gates, Rng &rng, uint64_t seed) {
    if (n_qubits == 0) {
        throw ContractError("circuit needs at least one qubit");
    }
    const uint64_t cells = uint64_t{depth} * n_qubits;
    if (n_t_gates > cells) {
        throw CapacityError(std::to_string(n_t_gates) + " T gates do not fit in " + std::to_string(depth) + "x" +
                            std::to_string(n_qubits) + " placements");
    }
    std::vector<std::vector<Brick>> layers(depth);
    for (unsigned l = 0; l < depth; ++l) {
        for (unsigned q = l % 2; q + 1 < n_qubits; q += 2) {
            layers[l].push_back(Brick{q, random_two_qubit_clifford(rng)});
        }
    }
    std::vector<uint32_t> all(cells);
    for (uint32_t i = 0; i < cells; ++i) all[i] = i;
    std::vector<uint32_t> chosen;
    chosen.reserve(n_t_gates);
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), n_t_gates, rng);
    std::vector<TPlacement> ts;
    ts.reserve(n_t_gates);
    for (uint32_t cell : chosen) ts.push_back(TPlacement{cell / n_qubits, cell % n_qubits});
    return Circuit(n_qubits, std::move(layers), std::move(ts), seed);
}

}  // namespace tdoped

#endif
