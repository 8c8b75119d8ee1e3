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

#ifndef TDOPED_PAULI_H
#define TDOPED_PAULI_H

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace tdoped {

using Amplitude = std::complex<double>;

/// Unsigned N-qubit Pauli string stored as a pair of bit masks.
///
/// Bit q of `x_mask` means an X factor on qubit q, bit q of `z_mask` a Z
/// factor; both bits set is Y. The operator represented is the Hermitian
/// string i^{|x&z|} X^x Z^z. Qubit 0 is the leftmost tensor factor and the
/// most significant bit of a computational basis index.
class PauliString {
   public:
    static constexpr unsigned kMaxQubits = 31;

    PauliString() = default;
    PauliString(unsigned n_qubits, uint64_t x_mask, uint64_t z_mask);

    static PauliString identity(unsigned n_qubits);
    /// Inverse of index(): index = x_mask * 2^N + z_mask.
    static PauliString from_index(unsigned n_qubits, uint64_t index);
    /// Single-qubit operator `op` in {'I','X','Y','Z'} on `qubit`.
    static PauliString single(unsigned n_qubits, unsigned qubit, char op);

    unsigned n_qubits() const { return n_; }
    uint64_t x_mask() const { return x_; }
    uint64_t z_mask() const { return z_; }
    uint64_t index() const { return (x_ << n_) | z_; }
    /// Number of strings on n_qubits, 4^N.
    static uint64_t count(unsigned n_qubits) { return uint64_t{1} << (2 * n_qubits); }

    bool is_identity() const { return (x_ | z_) == 0; }
    unsigned weight() const { return static_cast<unsigned>(std::popcount(x_ | z_)); }
    unsigned y_count() const { return static_cast<unsigned>(std::popcount(x_ & z_)); }
    char op(unsigned qubit) const;

    friend auto operator<=>(const PauliString &, const PauliString &) = default;

   private:
    unsigned n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
};

/// a * b = i^phase * string.
struct PauliProduct {
    PauliString string;
    unsigned phase = 0;  // exponent of i, in [0, 4)
};

PauliProduct multiply(const PauliString &a, const PauliString &b);
bool commutes(const PauliString &a, const PauliString &b);

/// Hermitian Pauli string with an overall sign of +1 or -1.
class SignedPauli {
   public:
    SignedPauli() = default;
    explicit SignedPauli(PauliString string, bool negative = false) : string_(string), negative_(negative) {}

    const PauliString &string() const { return string_; }
    bool negative() const { return negative_; }
    int sign() const { return negative_ ? -1 : 1; }
    unsigned n_qubits() const { return string_.n_qubits(); }

    SignedPauli operator-() const { return SignedPauli(string_, !negative_); }
    friend auto operator<=>(const SignedPauli &, const SignedPauli &) = default;

   private:
    PauliString string_;
    bool negative_ = false;
};

/// "XIZY": one letter per qubit, qubit 0 leftmost.
std::string to_string(const PauliString &p);
/// "+XIZY" / "-XIZY".
std::string to_string(const SignedPauli &p);
/// Accepts "XIZY" with an optional leading '+'. Throws ContractError on bad input.
PauliString parse_pauli_string(std::string_view text);
/// Requires a leading '+' or '-'.
SignedPauli parse_signed_pauli(std::string_view text);

/// Mask with qubit q mapped to basis-index bit (n-1-q).
inline uint64_t basis_mask(uint64_t qubit_mask, unsigned n_qubits) {
    uint64_t out = 0;
    for (unsigned q = 0; q < n_qubits; ++q) {
        if ((qubit_mask >> q) & 1) out |= uint64_t{1} << (n_qubits - 1 - q);
    }
    return out;
}

/// out = s * in, computed by permuting amplitudes and applying phases.
void apply_pauli(const PauliString &s, std::span<const Amplitude> in, std::span<Amplitude> out);

/// <psi|s|psi>. psi must have 2^N entries and unit norm within 1e-10.
double expectation(const PauliString &s, std::span<const Amplitude> psi);

namespace detail {
/// expectation() without the size and norm checks; basis-order masks precomputed.
double expectation_unchecked(uint64_t x_basis, uint64_t z_basis, unsigned y_count, std::span<const Amplitude> psi);
}  // namespace detail

}  // namespace tdoped

#endif
