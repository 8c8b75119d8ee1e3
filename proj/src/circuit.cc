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

#include "tdoped/circuit.h"

#include <algorithm>
#include <json.hpp>

#include "tdoped/errors.h"

namespace tdoped {

Circuit::Circuit(unsigned n_qubits, std::vector<std::vector<Brick>> layers, std::vector<TPlacement> t_gates,
                 uint64_t seed)
    : n_(n_qubits), layers_(std::move(layers)), t_gates_(std::move(t_gates)), seed_(seed) {
    if (n_ == 0 || n_ > PauliString::kMaxQubits) {
        throw ContractError("circuit qubit count out of range");
    }
    for (unsigned l = 0; l < layers_.size(); ++l) {
        std::vector<bool> used(n_, false);
        for (const auto &b : layers_[l]) {
            if (b.gate.n_qubits() != 2) {
                throw DimensionError("brick gate must be a 2-qubit tableau");
            }
            if (b.first_qubit + 1 >= n_) {
                throw ContractError("brick exceeds register in layer " + std::to_string(l));
            }
            if (b.first_qubit % 2 != l % 2) {
                throw ContractError("brick on (" + std::to_string(b.first_qubit) + "," +
                                    std::to_string(b.first_qubit + 1) + ") breaks the brick-wall pattern in layer " +
                                    std::to_string(l));
            }
            if (used[b.first_qubit] || used[b.first_qubit + 1]) {
                throw ContractError("overlapping bricks in layer " + std::to_string(l));
            }
            used[b.first_qubit] = used[b.first_qubit + 1] = true;
        }
    }
    std::sort(t_gates_.begin(), t_gates_.end());
    for (size_t k = 0; k < t_gates_.size(); ++k) {
        const auto &t = t_gates_[k];
        if (t.layer >= layers_.size() || t.qubit >= n_) {
            throw ContractError("T placement out of range");
        }
        if (k > 0 && t == t_gates_[k - 1]) {
            throw ContractError("duplicate T placement (" + std::to_string(t.layer) + "," + std::to_string(t.qubit) +
                                ")");
        }
    }
}

void conjugate_by_layer(const std::vector<Brick> &layer, SignedPauli &p) {
    for (const auto &b : layer) conjugate_two_qubit_in_place(b.gate, b.first_qubit, p);
}

CliffordTableau circuit_clifford_part(const Circuit &c) {
    auto id = CliffordTableau::identity(c.n_qubits());
    std::vector<SignedPauli> xs = id.x_images();
    std::vector<SignedPauli> zs = id.z_images();
    // U = L_{D-1} ... L_0, so images are pushed through layers in order.
    for (const auto &layer : c.layers()) {
        for (auto &p : xs) conjugate_by_layer(layer, p);
        for (auto &p : zs) conjugate_by_layer(layer, p);
    }
    return CliffordTableau(std::move(xs), std::move(zs));
}

std::string circuit_to_json(const Circuit &c) {
    nlohmann::ordered_json j;
    j["n_qubits"] = c.n_qubits();
    j["depth"] = c.depth();
    j["seed"] = c.seed();
    auto layers = nlohmann::ordered_json::array();
    for (const auto &layer : c.layers()) {
        auto gates = nlohmann::ordered_json::array();
        for (const auto &b : layer) {
            nlohmann::ordered_json g;
            g["qubits"] = {b.first_qubit, b.first_qubit + 1};
            g["images"] = {to_string(b.gate.x_image(0)), to_string(b.gate.z_image(0)), to_string(b.gate.x_image(1)),
                           to_string(b.gate.z_image(1))};
            gates.push_back(std::move(g));
        }
        layers.push_back(std::move(gates));
    }
    j["layers"] = std::move(layers);
    auto ts = nlohmann::ordered_json::array();
    for (const auto &t : c.t_gates()) ts.push_back({t.layer, t.qubit});
    j["t_gates"] = std::move(ts);
    return j.dump(1);
}

Circuit circuit_from_json(const std::string &text) {
    try {
        auto j = nlohmann::json::parse(text);
        auto n = j.at("n_qubits").get<unsigned>();
        auto depth = j.at("depth").get<unsigned>();
        std::vector<std::vector<Brick>> layers;
        for (const auto &jl : j.at("layers")) {
            std::vector<Brick> layer;
            for (const auto &g : jl) {
                auto qs = g.at("qubits").get<std::vector<unsigned>>();
                auto im = g.at("images").get<std::vector<std::string>>();
                if (qs.size() != 2 || qs[1] != qs[0] + 1 || im.size() != 4) {
                    throw ContractError("malformed brick entry");
                }
                CliffordTableau gate({parse_signed_pauli(im[0]), parse_signed_pauli(im[2])},
                                     {parse_signed_pauli(im[1]), parse_signed_pauli(im[3])});
                layer.push_back(Brick{qs[0], std::move(gate)});
            }
            layers.push_back(std::move(layer));
        }
        if (layers.size() != depth) {
            throw ContractError("depth does not match the number of layers");
        }
        std::vector<TPlacement> ts;
        for (const auto &t : j.at("t_gates")) {
            ts.push_back(TPlacement{t.at(0).get<unsigned>(), t.at(1).get<unsigned>()});
        }
        return Circuit(n, std::move(layers), std::move(ts), j.at("seed").get<uint64_t>());
    } catch (const nlohmann::json::exception &e) {
        throw ContractError(std::string("bad circuit JSON: ") + e.what());
    }
}

}  // namespace tdoped
