/*
 * Copyright 2026 The MBQC Sampling Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mbqc/circuit.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mbqc {

namespace {

constexpr std::string_view kNames[] = {"H", "CZ", "RZ", "RXY", "MS", "X", "Y", "Z"};

}  // namespace

std::string_view gate_name(GateKind kind) {
    return kNames[static_cast<size_t>(kind)];
}

GateKind gate_kind_from_name(std::string_view name) {
    for (size_t k = 0; k < std::size(kNames); k++) {
        if (kNames[k] == name) {
            return static_cast<GateKind>(k);
        }
    }
    throw std::invalid_argument("unknown gate name: " + std::string(name));
}

Mat2 Gate::matrix() const {
    switch (kind) {
        case GateKind::H:
            return gate_matrix::hadamard();
        case GateKind::RZ:
            return gate_matrix::rz(theta);
        case GateKind::RXY:
            return gate_matrix::rxy(theta, phi);
        case GateKind::X:
            return gate_matrix::pauli_x();
        case GateKind::Y:
            return gate_matrix::pauli_y();
        case GateKind::Z:
            return gate_matrix::pauli_z();
        default:
            throw std::logic_error("matrix() called on a two-qubit gate");
    }
}

Mat4 Gate::matrix2() const {
    switch (kind) {
        case GateKind::CZ:
            return gate_matrix::cz();
        case GateKind::MS:
            return gate_matrix::ms();
        default:
            throw std::logic_error("matrix2() called on a single-qubit gate");
    }
}

void Circuit::append(const Gate &gate) {
    if (gate.q0 >= num_qubits || (gate.is_two_qubit() && gate.q1 >= num_qubits)) {
        throw std::out_of_range(
            "gate " + std::string(gate_name(gate.kind)) + " targets a qubit outside a " +
            std::to_string(num_qubits) + "-qubit circuit");
    }
    if (gate.is_two_qubit() && gate.q0 == gate.q1) {
        throw std::invalid_argument("two-qubit gate on a repeated qubit");
    }
    if (!std::isfinite(gate.theta) || !std::isfinite(gate.phi)) {
        throw std::invalid_argument("non-finite gate parameter");
    }
    gates.push_back(gate);
}

void Circuit::h(uint32_t q) {
    append({GateKind::H, q});
}
void Circuit::cz(uint32_t a, uint32_t b) {
    append({GateKind::CZ, a, b});
}
void Circuit::rz(uint32_t q, double theta) {
    append({GateKind::RZ, q, 0, theta});
}
void Circuit::rxy(uint32_t q, double theta, double phi) {
    append({GateKind::RXY, q, 0, theta, phi});
}
void Circuit::ms(uint32_t a, uint32_t b) {
    append({GateKind::MS, a, b});
}
void Circuit::x(uint32_t q) {
    append({GateKind::X, q});
}
void Circuit::y(uint32_t q) {
    append({GateKind::Y, q});
}
void Circuit::z(uint32_t q) {
    append({GateKind::Z, q});
}

size_t Circuit::count(GateKind kind) const {
    size_t c = 0;
    for (const auto &g : gates) {
        c += g.kind == kind;
    }
    return c;
}

nlohmann::json circuit_to_json(const Circuit &circuit) {
    auto gates = nlohmann::json::array();
    for (const auto &g : circuit.gates) {
        nlohmann::json e;
        e["g"] = gate_name(g.kind);
        if (g.is_two_qubit()) {
            e["q"] = {g.q0, g.q1};
        } else {
            e["q"] = {g.q0};
        }
        if (g.kind == GateKind::RZ || g.kind == GateKind::RXY) {
            e["theta"] = g.theta;
        }
        if (g.kind == GateKind::RXY) {
            e["phi"] = g.phi;
        }
        gates.push_back(std::move(e));
    }
    return {{"qubits", circuit.num_qubits}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const nlohmann::json &j) {
    const nlohmann::json *gates = &j;
    size_t qubits = 0;
    bool explicit_count = false;
    if (j.is_object()) {
        gates = &j.at("gates");
        if (j.contains("qubits")) {
            qubits = j.at("qubits").get<size_t>();
            explicit_count = true;
        }
    }
    if (!gates->is_array()) {
        throw std::invalid_argument("circuit JSON must contain a gate array");
    }
    std::vector<Gate> parsed;
    for (const auto &e : *gates) {
        Gate g;
        g.kind = gate_kind_from_name(e.at("g").get<std::string>());
        const auto &q = e.at("q");
        size_t arity = g.is_two_qubit() ? 2 : 1;
        if (!q.is_array() || q.size() != arity) {
            throw std::invalid_argument("gate " + std::string(gate_name(g.kind)) + " needs " + std::to_string(arity) + " qubits");
        }
        g.q0 = q[0].get<uint32_t>();
        if (arity == 2) {
            g.q1 = q[1].get<uint32_t>();
        }
        g.theta = e.value("theta", 0.0);
        g.phi = e.value("phi", 0.0);
        if (!explicit_count) {
            qubits = std::max<size_t>(qubits, std::max(g.q0, g.q1) + 1);
        }
        parsed.push_back(g);
    }
    Circuit c(qubits);
    for (const auto &g : parsed) {
        c.append(g);
    }
    return c;
}

}  // namespace mbqc
