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

#include "tdoped/pauli.h"

#include <cmath>

#include "tdoped/errors.h"

namespace tdoped {

namespace {

void check_same_size(const PauliString &a, const PauliString &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw DimensionError("Pauli strings on " + std::to_string(a.n_qubits()) + " and " +
                             std::to_string(b.n_qubits()) + " qubits");
    }
}

unsigned parity(uint64_t v) { return static_cast<unsigned>(std::popcount(v)) & 1u; }

}  // namespace

PauliString::PauliString(unsigned n_qubits, uint64_t x_mask, uint64_t z_mask) : n_(n_qubits), x_(x_mask), z_(z_mask) {
    if (n_qubits > kMaxQubits) {
        throw ResourceError("Pauli strings support at most " + std::to_string(kMaxQubits) + " qubits");
    }
    uint64_t valid = n_qubits == 64 ? ~uint64_t{0} : (uint64_t{1} << n_qubits) - 1;
    if ((x_mask | z_mask) & ~valid) {
        throw ContractError("Pauli mask has bits beyond qubit count");
    }
}

PauliString PauliString::identity(unsigned n_qubits) { return PauliString(n_qubits, 0, 0); }

PauliString PauliString::from_index(unsigned n_qubits, uint64_t index) {
    if (index >= count(n_qubits)) {
        throw ContractError("Pauli index out of range");
    }
    uint64_t low = (uint64_t{1} << n_qubits) - 1;
    return PauliString(n_qubits, index >> n_qubits, index & low);
}

PauliString PauliString::single(unsigned n_qubits, unsigned qubit, char op) {
    if (qubit >= n_qubits) {
        throw ContractError("qubit index out of range");
    }
    uint64_t bit = uint64_t{1} << qubit;
    switch (op) {
        case 'I':
            return PauliString(n_qubits, 0, 0);
        case 'X':
            return PauliString(n_qubits, bit, 0);
        case 'Y':
            return PauliString(n_qubits, bit, bit);
        case 'Z':
            return PauliString(n_qubits, 0, bit);
        default:
            throw ContractError(std::string("unknown Pauli letter '") + op + "'");
    }
}

char PauliString::op(unsigned qubit) const {
    bool x = (x_ >> qubit) & 1;
    bool z = (z_ >> qubit) & 1;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

PauliProduct multiply(const PauliString &a, const PauliString &b) {
    check_same_size(a, b);
    // a*b = i^{|xa&za| + |xb&zb|} (-1)^{|za&xb|} X^{xa^xb} Z^{za^zb}, and
    // X^x Z^z = i^{-|x&z|} times the Hermitian string.
    uint64_t x = a.x_mask() ^ b.x_mask();
    uint64_t z = a.z_mask() ^ b.z_mask();
    int k = static_cast<int>(a.y_count() + b.y_count()) + 2 * std::popcount(a.z_mask() & b.x_mask()) -
            std::popcount(x & z);
    return {PauliString(a.n_qubits(), x, z), static_cast<unsigned>(((k % 4) + 4) % 4)};
}

bool commutes(const PauliString &a, const PauliString &b) {
    check_same_size(a, b);
    return parity((a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask())) == 0;
}

std::string to_string(const PauliString &p) {
    std::string out;
    out.reserve(p.n_qubits());
    for (unsigned q = 0; q < p.n_qubits(); ++q) out.push_back(p.op(q));
    return out;
}

std::string to_string(const SignedPauli &p) { return (p.negative() ? "-" : "+") + to_string(p.string()); }

PauliString parse_pauli_string(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.size() > PauliString::kMaxQubits) {
        throw ContractError("Pauli string too long: " + std::string(text));
    }
    auto n = static_cast<unsigned>(text.size());
    uint64_t x = 0, z = 0;
    for (unsigned q = 0; q < n; ++q) {
        uint64_t bit = uint64_t{1} << q;
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw ContractError("bad Pauli letter in '" + std::string(text) + "'");
        }
    }
    return PauliString(n, x, z);
}

SignedPauli parse_signed_pauli(std::string_view text) {
    if (text.empty() || (text.front() != '+' && text.front() != '-')) {
        throw ContractError("signed Pauli must start with '+' or '-': '" + std::string(text) + "'");
    }
    bool negative = text.front() == '-';
    text.remove_prefix(1);
    return SignedPauli(parse_pauli_string(text), negative);
}

void apply_pauli(const PauliString &s, std::span<const Amplitude> in, std::span<Amplitude> out) {
    uint64_t d = uint64_t{1} << s.n_qubits();
    if (in.size() != d || out.size() != d) {
        throw DimensionError("state size does not match Pauli string");
    }
    uint64_t xb = basis_mask(s.x_mask(), s.n_qubits());
    uint64_t zb = basis_mask(s.z_mask(), s.n_qubits());
    static constexpr Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Amplitude base = kIPow[s.y_count() % 4];
    // Z^z first (phase from the input bit pattern), then X^x flips.
    for (uint64_t b = 0; b < d; ++b) {
        Amplitude v = in[b] * base;
        out[b ^ xb] = parity(b & zb) ? -v : v;
    }
}

namespace detail {

double expectation_unchecked(uint64_t x_basis, uint64_t z_basis, unsigned y_count, std::span<const Amplitude> psi) {
    double re = 0, im = 0;
    const uint64_t d = psi.size();
    for (uint64_t b = 0; b < d; ++b) {
        Amplitude t = std::conj(psi[b ^ x_basis]) * psi[b];
        if (parity(b & z_basis)) {
            re -= t.real();
            im -= t.imag();
        } else {
            re += t.real();
            im += t.imag();
        }
    }
    switch (y_count % 4) {
        case 0:
            return re;
        case 1:
            return -im;
        case 2:
            return -re;
        default:
            return im;
    }
}

}  // namespace detail

double expectation(const PauliString &s, std::span<const Amplitude> psi) {
    uint64_t d = uint64_t{1} << s.n_qubits();
    if (psi.size() != d) {
        throw DimensionError("state size does not match Pauli string");
    }
    double norm = 0;
    for (const auto &a : psi) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw ContractError("expectation requires a unit-norm state");
    }
    return detail::expectation_unchecked(basis_mask(s.x_mask(), s.n_qubits()), basis_mask(s.z_mask(), s.n_qubits()),
                                         s.y_count(), psi);
}

}  // namespace tdoped
