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

#include "tdoped/tableau.h"

#include <bit>
#include <string>

#include "tdoped/errors.h"

namespace tdoped {

namespace {

// Phase exponent k with H(x1,z1) H(x2,z2) = i^k H(x1^x2, z1^z2).
inline unsigned product_phase(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
    int k = std::popcount(x1 & z1) + std::popcount(x2 & z2) + 2 * std::popcount(z1 & x2) -
            std::popcount((x1 ^ x2) & (z1 ^ z2));
    return static_cast<unsigned>(k) & 3u;
}

struct Accumulator {
    uint64_t x = 0;
    uint64_t z = 0;
    unsigned phase = 0;

    void times(uint64_t x2, uint64_t z2, unsigned phase2) {
        phase = (phase + phase2 + product_phase(x, z, x2, z2)) & 3u;
        x ^= x2;
        z ^= z2;
    }
    void times(const SignedPauli &p) {
        times(p.string().x_mask(), p.string().z_mask(), p.negative() ? 2u : 0u);
    }
};

void check_qubit(unsigned n_qubits, unsigned q) {
    if (q >= n_qubits) {
        throw ContractError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_qubits) + " qubits");
    }
}

}  // namespace

CliffordTableau::CliffordTableau(std::vector<SignedPauli> x_images, std::vector<SignedPauli> z_images)
    : x_images_(std::move(x_images)), z_images_(std::move(z_images)) {
    if (x_images_.size() != z_images_.size()) {
        throw DimensionError("tableau needs as many X images as Z images");
    }
    for (unsigned q = 0; q < x_images_.size(); ++q) {
        if (x_images_[q].n_qubits() != n_qubits() || z_images_[q].n_qubits() != n_qubits()) {
            throw DimensionError("tableau image has the wrong qubit count");
        }
    }
    if (!is_symplectic()) {
        throw ContractError("tableau images do not preserve the symplectic form");
    }
}

CliffordTableau CliffordTableau::identity(unsigned n_qubits) {
    std::vector<SignedPauli> xs, zs;
    xs.reserve(n_qubits);
    zs.reserve(n_qubits);
    for (unsigned q = 0; q < n_qubits; ++q) {
        xs.emplace_back(PauliString::single(n_qubits, q, 'X'));
        zs.emplace_back(PauliString::single(n_qubits, q, 'Z'));
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

SignedPauli CliffordTableau::conjugate(const SignedPauli &p) const {
    if (p.n_qubits() != n_qubits()) {
        throw DimensionError("conjugated string has the wrong qubit count");
    }
    const uint64_t x = p.string().x_mask();
    const uint64_t z = p.string().z_mask();
    // C H(x,z) C^dag = i^{|x&z|} prod C X_q C^dag  prod C Z_q C^dag.
    Accumulator acc;
    acc.phase = (p.string().y_count() + (p.negative() ? 2u : 0u)) & 3u;
    for (unsigned q = 0; q < n_qubits(); ++q) {
        if ((x >> q) & 1) acc.times(x_images_[q]);
    }
    for (unsigned q = 0; q < n_qubits(); ++q) {
        if ((z >> q) & 1) acc.times(z_images_[q]);
    }
    if (acc.phase & 1) {
        throw InternalError("odd phase after conjugation; tableau is corrupted");
    }
    return SignedPauli(PauliString(n_qubits(), acc.x, acc.z), acc.phase == 2);
}

bool CliffordTableau::is_symplectic() const {
    const unsigned n = n_qubits();
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            bool xz = commutes(x_images_[i].string(), z_images_[j].string());
            if (xz == (i == j)) return false;
            if (j > i) {
                if (!commutes(x_images_[i].string(), x_images_[j].string())) return false;
                if (!commutes(z_images_[i].string(), z_images_[j].string())) return false;
            }
        }
    }
    return true;
}

CliffordTableau compose(const CliffordTableau &a, const CliffordTableau &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw DimensionError("composing tableaux of different sizes");
    }
    std::vector<SignedPauli> xs, zs;
    xs.reserve(a.n_qubits());
    zs.reserve(a.n_qubits());
    for (unsigned q = 0; q < a.n_qubits(); ++q) {
        xs.push_back(a.conjugate(b.x_image(q)));
        zs.push_back(a.conjugate(b.z_image(q)));
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

namespace gates {

CliffordTableau hadamard(unsigned n_qubits, unsigned q) {
    check_qubit(n_qubits, q);
    auto t = CliffordTableau::identity(n_qubits);
    auto xs = t.x_images();
    auto zs = t.z_images();
    std::swap(xs[q], zs[q]);
    return CliffordTableau(std::move(xs), std::move(zs));
}

CliffordTableau phase_s(unsigned n_qubits, unsigned q) {
    check_qubit(n_qubits, q);
    auto t = CliffordTableau::identity(n_qubits);
    auto xs = t.x_images();
    xs[q] = SignedPauli(PauliString::single(n_qubits, q, 'Y'));
    return CliffordTableau(std::move(xs), t.z_images());
}

CliffordTableau pauli_z(unsigned n_qubits, unsigned q) {
    check_qubit(n_qubits, q);
    auto t = CliffordTableau::identity(n_qubits);
    auto xs = t.x_images();
    xs[q] = -xs[q];
    return CliffordTableau(std::move(xs), t.z_images());
}

CliffordTableau cnot(unsigned n_qubits, unsigned control, unsigned target) {
    check_qubit(n_qubits, control);
    check_qubit(n_qubits, target);
    if (control == target) {
        throw ContractError("CNOT control equals target");
    }
    auto t = CliffordTableau::identity(n_qubits);
    auto xs = t.x_images();
    auto zs = t.z_images();
    uint64_t c = uint64_t{1} << control, g = uint64_t{1} << target;
    xs[control] = SignedPauli(PauliString(n_qubits, c | g, 0));
    zs[target] = SignedPauli(PauliString(n_qubits, 0, c | g));
    return CliffordTableau(std::move(xs), std::move(zs));
}

}  // namespace gates

CliffordTableau embed_two_qubit(const CliffordTableau &gate, unsigned n_qubits, unsigned first) {
    if (gate.n_qubits() != 2) {
        throw DimensionError("embed_two_qubit expects a 2-qubit tableau");
    }
    if (first + 1 >= n_qubits) {
        throw ContractError("2-qubit gate does not fit in the register");
    }
    auto t = CliffordTableau::identity(n_qubits);
    auto xs = t.x_images();
    auto zs = t.z_images();
    auto lift = [&](const SignedPauli &p) {
        return SignedPauli(PauliString(n_qubits, p.string().x_mask() << first, p.string().z_mask() << first),
                           p.negative());
    };
    for (unsigned k = 0; k < 2; ++k) {
        xs[first + k] = lift(gate.x_image(k));
        zs[first + k] = lift(gate.z_image(k));
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

void conjugate_two_qubit_in_place(const CliffordTableau &gate, unsigned first, SignedPauli &p) {
    const uint64_t x = p.string().x_mask();
    const uint64_t z = p.string().z_mask();
    const uint64_t lx = (x >> first) & 3u;
    const uint64_t lz = (z >> first) & 3u;
    if ((lx | lz) == 0) return;
    // Hermitian strings factor over qubits, so only the local factor changes.
    SignedPauli local = gate.conjugate(PauliString(2, lx, lz));
    const uint64_t clear = ~(uint64_t{3} << first);
    uint64_t nx = (x & clear) | (local.string().x_mask() << first);
    uint64_t nz = (z & clear) | (local.string().z_mask() << first);
    p = SignedPauli(PauliString(p.n_qubits(), nx, nz), p.negative() != local.negative());
}

CliffordTableau two_qubit_clifford_from_index(uint32_t index) {
    if (index >= kTwoQubitCliffordCount) {
        throw ContractError("2-qubit Clifford index out of range");
    }
    const uint32_t signs = index % 16;
    uint32_t rest = index / 16;  // [0, 720)
    const uint32_t c3 = rest % 2;
    rest /= 2;
    const uint32_t c2 = rest % 3;
    rest /= 3;
    const uint32_t c1 = rest % 8;
    const uint32_t c0 = rest / 8;  // [0, 15)

    auto nth = [](uint32_t k, auto &&accept) {
        for (uint64_t i = 1; i < 16; ++i) {
            auto s = PauliString::from_index(2, i);
            if (accept(s)) {
                if (k == 0) return s;
                --k;
            }
        }
        throw InternalError("2-qubit Clifford enumeration ran out of candidates");
    };
    PauliString x0 = nth(c0, [](const PauliString &) { return true; });
    PauliString z0 = nth(c1, [&](const PauliString &s) { return !commutes(s, x0); });
    PauliString x1 = nth(c2, [&](const PauliString &s) { return commutes(s, x0) && commutes(s, z0); });
    PauliString z1 = nth(c3, [&](const PauliString &s) {
        return commutes(s, x0) && commutes(s, z0) && !commutes(s, x1);
    });
    return CliffordTableau({SignedPauli(x0, signs & 1), SignedPauli(x1, signs & 4)},
                           {SignedPauli(z0, signs & 2), SignedPauli(z1, signs & 8)});
}

ConjugationTable::ConjugationTable(const CliffordTableau &t)
    : n_(t.n_qubits()), chunks_((t.n_qubits() + 7) / 8), x_table_(chunks_ * 256), z_table_(chunks_ * 256) {
    auto fill = [&](const std::vector<SignedPauli> &images, std::vector<Entry> &table) {
        for (unsigned c = 0; c < chunks_; ++c) {
            for (unsigned v = 0; v < 256; ++v) {
                Accumulator acc;
                for (unsigned b = 0; b < 8; ++b) {
                    unsigned q = 8 * c + b;
                    if (q < n_ && ((v >> b) & 1)) acc.times(images[q]);
                }
                table[c * 256 + v] = {acc.x, acc.z, static_cast<uint8_t>(acc.phase)};
            }
        }
    };
    fill(t.x_images(), x_table_);
    fill(t.z_images(), z_table_);
}

void ConjugationTable::conjugate(uint64_t x, uint64_t z, uint64_t &x_out, uint64_t &z_out, bool &negative) const {
    Accumulator acc;
    acc.phase = static_cast<unsigned>(std::popcount(x & z)) & 3u;
    for (unsigned c = 0; c < chunks_; ++c) {
        const Entry &e = x_table_[c * 256 + ((x >> (8 * c)) & 0xFF)];
        acc.times(e.x, e.z, e.phase);
    }
    for (unsigned c = 0; c < chunks_; ++c) {
        const Entry &e = z_table_[c * 256 + ((z >> (8 * c)) & 0xFF)];
        acc.times(e.x, e.z, e.phase);
    }
    if (acc.phase & 1) {
        throw InternalError("odd phase after table conjugation");
    }
    x_out = acc.x;
    z_out = acc.z;
    negative = acc.phase == 2;
}

SignedPauli ConjugationTable::conjugate(const SignedPauli &p) const {
    uint64_t x, z;
    bool neg;
    conjugate(p.string().x_mask(), p.string().z_mask(), x, z, neg);
    return SignedPauli(PauliString(n_, x, z), neg != p.negative());
}

}  // namespace tdoped
