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

#ifndef MBQC_CIRCUIT_H
#define MBQC_CIRCUIT_H

#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mbqc/gates.h"

namespace mbqc {

enum class GateKind : uint8_t { H, CZ, RZ, RXY, MS, X, Y, Z };

std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

struct Gate {
    GateKind kind = GateKind::H;
    uint32_t q0 = 0;
    uint32_t q1 = 0;  // second qubit of CZ/MS
    double theta = 0;
    double phi = 0;

    bool is_two_qubit() const {
        return kind == GateKind::CZ || kind == GateKind::MS;
    }
    /// Single-qubit matrix; throws for two-qubit gates.
    Mat2 matrix() const;
    /// Two-qubit matrix with q0 as the first (low) qubit; throws for single-qubit gates.
    Mat4 matrix2() const;
    bool operator==(const Gate &) const = default;
};

struct Circuit {
    size_t num_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(size_t num_qubits) : num_qubits(num_qubits) {
    }

    /// Validates qubit indices and parameters, then appends.
    void append(const Gate &gate);
    void h(uint32_t q);
    void cz(uint32_t a, uint32_t b);
    void rz(uint32_t q, double theta);
    void rxy(uint32_t q, double theta, double phi);
    void ms(uint32_t a, uint32_t b);
    void x(uint32_t q);
    void y(uint32_t q);
    void z(uint32_t q);

    size_t count(GateKind kind) const;
    bool operator==(const Circuit &) const = default;
};

/// {"qubits": N, "gates": [{"g":"MS","q":[0,1]}, {"g":"RXY","q":[2],"theta":..,"phi":..}, ...]}
nlohmann::json circuit_to_json(const Circuit &circuit);

/// Accepts the object form above or a bare gate array (qubit count inferred).
Circuit circuit_from_json(const nlohmann::json &j);

}  // namespace mbqc

#endif
