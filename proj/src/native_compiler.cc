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

#include "mbqc/native_compiler.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mbqc/density_matrix.h"
#include "mbqc/sampling.h"
#include "mbqc/state_vector.h"

namespace mbqc {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

Circuit CompiledProgram::state_circuit() const {
    Circuit c = circuit;
    for (uint32_t q = 0; q < c.num_qubits; q++) {
        c.rxy(q, kPi / 2, -kPi / 2);
    }
    return c;
}

CompiledProgram compile(const LatticeSpec &lattice, const AngleGrid &beta) {
    size_t n = lattice.num_sites();
    if (beta.size() != n) {
        throw std::invalid_argument("angle grid size does not match lattice");
    }
    if (n > 64) {
        throw std::invalid_argument("compiled programs support at most 64 qubits");
    }
    CompiledProgram p;
    p.circuit = Circuit(n);
    double beta_sum = 0;
    for (uint32_t q = 0; q < n; q++) {
        p.circuit.rxy(q, kPi / 2, beta.angle(q) - kPi / 2);
        p.circuit.rxy(q, kPi / 2, kPi / 2);
        beta_sum += beta.angle(q);
    }
    auto edges = lattice.edges_row_major();
    for (const auto &e : edges) {
        p.circuit.ms(static_cast<uint32_t>(e.a), static_cast<uint32_t>(e.b));
    }
    for (uint32_t q = 0; q < n; q++) {
        size_t deg = lattice.degree(q);
        if (deg >= 2) {
            for (size_t r = 0; r < deg - 2; r++) {
                p.circuit.rxy(q, kPi / 2, kPi);
            }
        } else {
            for (size_t r = 0; r < 2 - deg; r++) {
                p.circuit.rxy(q, kPi / 2, 0);
            }
        }
    }
    p.post_flip_mask = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    double phase = double(edges.size()) * kPi / 4 + beta_sum / 2 - double(n) * kPi / 2;
    p.global_phase = std::polar(1.0, -phase);
    return p;
}

nlohmann::json compiled_to_json(const CompiledProgram &program) {
    nlohmann::json j = circuit_to_json(program.circuit);
    j["post_flip_mask"] = outcome_to_string(program.post_flip_mask, program.circuit.num_qubits);
    j["global_phase"] = {program.global_phase.real(), program.global_phase.imag()};
    return j;
}

CompiledProgram compiled_from_json(const nlohmann::json &j) {
    CompiledProgram p;
    p.circuit = circuit_from_json(j);
    for (const auto &g : p.circuit.gates) {
        if (g.kind != GateKind::MS && g.kind != GateKind::RXY) {
            throw std::invalid_argument("compiled programs contain only MS and RXY gates");
        }
    }
    p.post_flip_mask = outcome_from_string(j.at("post_flip_mask").get<std::string>(), p.circuit.num_qubits);
    const auto &gp = j.at("global_phase");
    p.global_phase = {gp.at(0).get<double>(), gp.at(1).get<double>()};
    return p;
}

std::vector<double> compiled_distribution(const CompiledProgram &program) {
    auto raw = apply_circuit(StateVector(program.circuit.num_qubits), program.circuit).probabilities();
    std::vector<double> out(raw.size());
    for (uint64_t x = 0; x < raw.size(); x++) {
        out[x ^ program.post_flip_mask] = raw[x];
    }
    return out;
}

EquivalenceReport verify_equivalence(
    const CompiledProgram &program, const LatticeSpec &lattice, const AngleGrid &beta, double tolerance) {
    EquivalenceReport r;
    r.recorded_phase = program.global_phase;
    StateVector ideal = cluster_state(lattice, beta);
    if (program.circuit.num_qubits != ideal.num_qubits()) {
        r.message = "qubit count differs from the lattice";
        return r;
    }
    StateVector compiled = apply_circuit(StateVector(ideal.num_qubits()), program.state_circuit());
    cplx overlap = compiled.inner(ideal);
    r.recovered_phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx{1, 0};
    uint64_t worst_state = 0;
    for (uint64_t i = 0; i < ideal.dimension(); i++) {
        double d = std::abs(program.global_phase * compiled[i] - ideal[i]);
        if (d > r.state_deviation) {
            r.state_deviation = d;
            worst_state = i;
        }
        if (d > tolerance && !r.first_offending_index) {
            r.first_offending_index = i;
        }
    }
    auto got = compiled_distribution(program);
    auto want = hadamard_basis_distribution(ideal);
    for (uint64_t x = 0; x < want.size(); x++) {
        r.distribution_deviation = std::max(r.distribution_deviation, std::abs(got[x] - want[x]));
    }
    r.passed = r.state_deviation <= tolerance && r.distribution_deviation <= tolerance;
    if (r.passed) {
        r.message = "equivalent";
    } else {
        r.message = "amplitude " + std::to_string(r.first_offending_index.value_or(worst_state)) +
                    " deviates; largest state deviation " + std::to_string(r.state_deviation) +
                    ", distribution deviation " + std::to_string(r.distribution_deviation);
    }
    return r;
}

NativeIdentityResiduals native_identity_residuals() {
    using namespace gate_matrix;
    NativeIdentityResiduals r{};
    Mat2 post = ry(-kPi / 2) * rx(-kPi / 2);
    Mat4 lhs = kron(post, post) * ms() * kron(ry(kPi / 2), ry(kPi / 2)) * std::polar(1.0, -kPi / 4);
    r.cz_from_ms = lhs.max_diff(cz());

    for (int k = 0; k <= 16; k++) {
        double theta = -kPi + k * kPi / 8;
        r.z_from_xy = std::max(r.z_from_xy, (ry(-kPi / 2) * rx(theta) * ry(kPi / 2)).max_diff(rz(theta)));
        for (int l = 0; l < 8; l++) {
            double phi = l * kPi / 4;
            Mat2 a = rxy(theta, phi + kPi);
            Mat2 b = rz(kPi) * rxy(theta, phi) * cplx(0, 1);
            r.phase_shift_pi = std::max(r.phase_shift_pi, std::max(std::abs(a(0, 0) - b(0, 0)), std::abs(a(1, 0) - b(1, 0))));
        }
    }
    r.hadamard_from_xy = (pauli_x() * ry(kPi / 2)).max_diff(hadamard());

    // MS(0,1) and MS(1,2) on three qubits.
    Circuit ab(3);
    ab.ms(0, 1);
    ab.ms(1, 2);
    Circuit ba(3);
    ba.ms(1, 2);
    ba.ms(0, 1);
    for (uint64_t basis = 0; basis < 8; basis++) {
        StateVector s(3);
        s.mutable_amplitudes()[0] = 0;
        s.mutable_amplitudes()[basis] = 1;
        auto x = apply_circuit(s, ab);
        auto y = apply_circuit(s, ba);
        for (uint64_t i = 0; i < 8; i++) {
            r.ms_commute = std::max(r.ms_commute, std::abs(x[i] - y[i]));
        }
    }
    return r;
}

PreparationFactory compiled_preparation_factory(const LatticeSpec &lattice, const NoiseSpec &noise, CompiledMode mode) {
    noise.validate();
    if (mode == CompiledMode::Trajectory) {
        return [lattice, noise](const AngleGrid &beta) -> std::unique_ptr<Preparation> {
            return std::make_unique<TrajectoryPreparation>(compile(lattice, beta).state_circuit(), noise);
        };
    }
    return [lattice, noise](const AngleGrid &beta) -> std::unique_ptr<Preparation> {
        return std::make_unique<MixedPreparation>(simulate_density(compile(lattice, beta).state_circuit(), noise));
    };
}

}  // namespace mbqc
