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

#ifndef TDOPED_TABLEAU_H
#define TDOPED_TABLEAU_H

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "tdoped/pauli.h"

namespace tdoped {

/// Number of 2-qubit Clifford operations modulo global phase.
inline constexpr uint32_t kTwoQubitCliffordCount = 11520;

/// A Clifford operation C stored as the conjugation images C P C^dagger of the
/// 2N generators X_i, Z_i. Global phase is not represented.
class CliffordTableau {
   public:
    CliffordTableau() = default;
    /// Throws ContractError unless the images preserve the symplectic form.
    CliffordTableau(std::vector<SignedPauli> x_images, std::vector<SignedPauli> z_images);

    static CliffordTableau identity(unsigned n_qubits);

    unsigned n_qubits() const { return static_cast<unsigned>(x_images_.size()); }
    const SignedPauli &x_image(unsigned q) const { return x_images_[q]; }
    const SignedPauli &z_image(unsigned q) const { return z_images_[q]; }
    const std::vector<SignedPauli> &x_images() const { return x_images_; }
    const std::vector<SignedPauli> &z_images() const { return z_images_; }

    /// C p C^dagger.
    SignedPauli conjugate(const SignedPauli &p) const;
    SignedPauli conjugate(const PauliString &p) const { return conjugate(SignedPauli(p)); }

    /// True iff X_i image anticommutes with Z_i image and every other pair commutes.
    bool is_symplectic() const;

    friend bool operator==(const CliffordTableau &, const CliffordTableau &) = default;

   private:
    std::vector<SignedPauli> x_images_;
    std::vector<SignedPauli> z_images_;
};

/// Tableau of the product a*b (apply b first, then a).
CliffordTableau compose(const CliffordTableau &a, const CliffordTableau &b);

/// Free function alias of CliffordTableau::conjugate.
inline SignedPauli conjugate(const CliffordTableau &t, const SignedPauli &p) { return t.conjugate(p); }

namespace gates {
CliffordTableau hadamard(unsigned n_qubits, unsigned q);
CliffordTableau phase_s(unsigned n_qubits, unsigned q);
CliffordTableau pauli_z(unsigned n_qubits, unsigned q);
CliffordTableau cnot(unsigned n_qubits, unsigned control, unsigned target);
}  // namespace gates

/// Places a 2-qubit tableau on qubits (first, first+1) of an n-qubit register.
CliffordTableau embed_two_qubit(const CliffordTableau &gate, unsigned n_qubits, unsigned first);

/// Conjugates `p` by a 2-qubit gate acting on qubits (first, first+1), in place.
void conjugate_two_qubit_in_place(const CliffordTableau &gate, unsigned first, SignedPauli &p);

/// The index-th 2-qubit Clifford in a fixed enumeration of all 11520.
///
/// Choice order: image of X0 among the 15 non-identity strings, image of Z0
/// among the 8 that anticommute with it, image of X1 among the 3 that commute
/// with both, image of Z1 among the 2 remaining candidates, then 4 sign bits.
CliffordTableau two_qubit_clifford_from_index(uint32_t index);

/// Uniform sample over the 11520 2-qubit Cliffords.
template <class Rng>
CliffordTableau random_two_qubit_clifford(Rng &rng) {
    std::uniform_int_distribution<uint32_t> pick(0, kTwoQubitCliffordCount - 1);
    return two_qubit_clifford_from_index(pick(rng));
}

/// Precomputed byte-chunk products of generator images for fast repeated
/// conjugation of arbitrary strings by one tableau.
class ConjugationTable {
   public:
    explicit ConjugationTable(const CliffordTableau &t);

    unsigned n_qubits() const { return n_; }
    /// Image of the string (x, z) with +1 sign; returns (x', z', negative).
    void conjugate(uint64_t x, uint64_t z, uint64_t &x_out, uint64_t &z_out, bool &negative) const;
    SignedPauli conjugate(const SignedPauli &p) const;

   private:
    struct Entry {
        uint64_t x;
        uint64_t z;
        uint8_t phase;
    };
    unsigned n_;
    unsigned chunks_;
    std::vector<Entry> x_table_;  // chunks_ * 256
    std::vector<Entry> z_table_;
};

}  // namespace tdoped

#endif
