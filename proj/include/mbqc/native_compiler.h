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

#ifndef MBQC_NATIVE_COMPILER_H
#define MBQC_NATIVE_COMPILER_H

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "mbqc/circuit.h"
#include "mbqc/lattice.h"
#include "mbqc/noise.h"
#include "mbqc/preparation.h"

namespace mbqc {

/// Cluster preparation plus Hadamard-basis measurement in the trapped-ion gate set {MS, RXY}.
///
/// `circuit` is followed by a computational-basis measurement whose bits are XORed with
/// post_flip_mask. Appending Y(-pi/2) = R(pi/2, -pi/2) to every qubit gives the state circuit,
/// which satisfies |CS(beta)> = global_phase * state_circuit |0...0>.
struct CompiledProgram {
    Circuit circuit;
    uint64_t post_flip_mask = 0;
    cplx global_phase = 1;

    Circuit state_circuit() const;
    bool operator==(const CompiledProgram &) const = default;
};

/// Layers: R(pi/2, beta_k - pi/2) then Y(pi/2) on every qubit; one MS per edge in row-major
/// order; X(-pi/2) = R(pi/2, pi) repeated deg(k) - 2 times (X(pi/2) = R(pi/2, 0) repeated
/// 2 - deg(k) times when deg(k) < 2). The closing Y(-pi/2) layer is absorbed into the
/// measurement: H Y(-pi/2) = X, so every measured bit is flipped classically instead.
/// global_phase = exp(-i (M pi/4 + sum(beta)/2 - N pi/2)) for M MS gates on N qubits.
CompiledProgram compile(const LatticeSpec &lattice, const AngleGrid &beta);

nlohmann::json compiled_to_json(const CompiledProgram &program);
CompiledProgram compiled_from_json(const nlohmann::json &j);

/// Hadamard-basis distribution produced by running the program and applying the flip mask.
std::vector<double> compiled_distribution(const CompiledProgram &program);

struct EquivalenceReport {
    bool passed = false;
    /// max |global_phase * U|0> - |CS>| over amplitudes.
    double state_deviation = 0;
    /// max |P_compiled(x) - P_ideal(x)| over outcomes.
    double distribution_deviation = 0;
    cplx recovered_phase = 1;  // <U 0|CS>/|<U 0|CS>|
    cplx recorded_phase = 1;
    std::optional<uint64_t> first_offending_index;
    std::string message;
};

EquivalenceReport verify_equivalence(
    const CompiledProgram &program, const LatticeSpec &lattice, const AngleGrid &beta, double tolerance = 1e-10);

/// Dense-matrix residuals of the gate identities the compilation relies on.
struct NativeIdentityResiduals {
    double cz_from_ms;       // CZ = e^{-i pi/4} (Y(-pi/2) X(-pi/2))^{(x)2} MS Y(pi/2)^{(x)2}
    double z_from_xy;        // Z(theta) = Y(-pi/2) X(theta) Y(pi/2), worst over a theta grid
    double phase_shift_pi;   // R(theta, phi + pi)|0> = e^{i pi/2} Z(pi) R(theta, phi)|0>, worst over a grid
    double hadamard_from_xy; // H = X Y(pi/2)
    double ms_commute;       // MS on overlapping pairs commute
};
NativeIdentityResiduals native_identity_residuals();

enum class CompiledMode { Trajectory, Density };

/// Noisy preparations of the compiled state circuit (noise slots around the MS gates).
PreparationFactory compiled_preparation_factory(const LatticeSpec &lattice, const NoiseSpec &noise, CompiledMode mode);

}  // namespace mbqc

#endif
