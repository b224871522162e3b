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

#include "mbqc/state_vector.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mbqc/product_operator.h"

namespace mbqc {

StateVector::StateVector(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits >= 40) {
        throw std::invalid_argument("statevector too large: " + std::to_string(num_qubits) + " qubits");
    }
    amps_.assign(size_t{1} << num_qubits, 0);
    amps_[0] = 1;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amplitudes) {
    size_t d = amplitudes.size();
    if (d == 0 || (d & (d - 1)) != 0) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    StateVector s;
    s.num_qubits_ = static_cast<size_t>(std::countr_zero(d));
    s.amps_ = std::move(amplitudes);
    return s;
}

void StateVector::check_qubit(uint32_t q) const {
    if (q >= num_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits_) + " qubits");
    }
}

void StateVector::apply(uint32_t q, const Mat2 &u) {
    check_qubit(q);
    size_t step = size_t{1} << q;
    size_t d = amps_.size();
    for (size_t base = 0; base < d; base += 2 * step) {
        for (size_t i = base; i < base + step; i++) {
            cplx a0 = amps_[i];
            cplx a1 = amps_[i + step];
            amps_[i] = u.m[0] * a0 + u.m[1] * a1;
            amps_[i + step] = u.m[2] * a0 + u.m[3] * a1;
        }
    }
}

void StateVector::apply(uint32_t a, uint32_t b, const Mat4 &u) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::invalid_argument("two-qubit gate on a repeated qubit");
    }
    size_t ma = size_t{1} << a;
    size_t mb = size_t{1} << b;
    size_t d = amps_.size();
    for (size_t i = 0; i < d; i++) {
        if (i & (ma | mb)) {
            continue;
        }
        size_t idx[4] = {i, i | ma, i | mb, i | ma | mb};
        cplx v[4] = {amps_[idx[0]], amps_[idx[1]], amps_[idx[2]], amps_[idx[3]]};
        for (int r = 0; r < 4; r++) {
            amps_[idx[r]] = u(r, 0) * v[0] + u(r, 1) * v[1] + u(r, 2) * v[2] + u(r, 3) * v[3];
        }
    }
}

void StateVector::apply_cz(uint32_t a, uint32_t b) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) {
        throw std::invalid_argument("two-qubit gate on a repeated qubit");
    }
    size_t mask = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply_z(uint32_t q) {
    check_qubit(q);
    size_t mask = size_t{1} << q;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & mask) {
            amps_[i] = -amps_[i];
        }
    }
}

void StateVector::apply(const Gate &gate) {
    switch (gate.kind) {
        case GateKind::CZ:
            apply_cz(gate.q0, gate.q1);
            return;
        case GateKind::MS:
            apply(gate.q0, gate.q1, gate_matrix::ms());
            return;
        case GateKind::Z:
            apply_z(gate.q0);
            return;
        default:
            apply(gate.q0, gate.matrix());
    }
}

void StateVector::apply(const Circuit &circuit) {
    if (circuit.num_qubits != num_qubits_) {
        throw std::invalid_argument(
            "circuit has " + std::to_string(circuit.num_qubits) + " qubits but state has " + std::to_string(num_qubits_));
    }
    for (const auto &g : circuit.gates) {
        apply(g);
    }
}

double StateVector::norm_squared() const {
    double t = 0;
    for (const auto &a : amps_) {
        t += std::norm(a);
    }
    return t;
}

void StateVector::normalize() {
    double n = std::sqrt(norm_squared());
    if (n == 0) {
        throw std::domain_error("cannot normalize a zero vector");
    }
    for (auto &a : amps_) {
        a /= n;
    }
}

cplx StateVector::inner(const StateVector &other) const {
    if (other.amps_.size() != amps_.size()) {
        throw std::invalid_argument("inner product of states with different sizes");
    }
    cplx t = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        t += std::conj(amps_[i]) * other.amps_[i];
    }
    return t;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (size_t i = 0; i < amps_.size(); i++) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

void StateVector::append_qubit(const Mat2 &u) {
    size_t d = amps_.size();
    amps_.resize(2 * d);
    for (size_t i = 0; i < d; i++) {
        cplx a = amps_[i];
        amps_[i] = u(0, 0) * a;
        amps_[i + d] = u(1, 0) * a;
    }
    num_qubits_++;
}

double StateVector::project_out(uint32_t q, int bit) {
    check_qubit(q);
    size_t low = (size_t{1} << q) - 1;
    size_t d = amps_.size() / 2;
    std::vector<cplx> out(d);
    double p = 0;
    for (size_t j = 0; j < d; j++) {
        size_t i = (j & low) | ((j & ~low) << 1) | (static_cast<size_t>(bit) << q);
        out[j] = amps_[i];
        p += std::norm(out[j]);
    }
    amps_ = std::move(out);
    num_qubits_--;
    return p;
}

StateVector apply_circuit(StateVector state, const Circuit &circuit) {
    state.apply(circuit);
    return state;
}

void hadamard_transform(std::vector<cplx> &a) {
    size_t d = a.size();
    for (size_t step = 1; step < d; step <<= 1) {
        for (size_t base = 0; base < d; base += 2 * step) {
            for (size_t i = base; i < base + step; i++) {
                cplx x = a[i];
                cplx y = a[i + step];
                a[i] = x + y;
                a[i + step] = x - y;
            }
        }
    }
    double scale = std::pow(std::numbers::sqrt2 / 2, std::countr_zero(d));
    for (auto &v : a) {
        v *= scale;
    }
}

void walsh_hadamard(std::vector<double> &a) {
    size_t d = a.size();
    for (size_t step = 1; step < d; step <<= 1) {
        for (size_t base = 0; base < d; base += 2 * step) {
            for (size_t i = base; i < base + step; i++) {
                double x = a[i];
                double y = a[i + step];
                a[i] = x + y;
                a[i + step] = x - y;
            }
        }
    }
}

std::vector<double> hadamard_basis_distribution(const StateVector &state) {
    std::vector<cplx> a = state.amplitudes();
    hadamard_transform(a);
    std::vector<double> p(a.size());
    for (size_t i = 0; i < a.size(); i++) {
        p[i] = std::norm(a[i]);
    }
    return p;
}

double expectation_product_operator(const StateVector &state, const StabilizerElement &op) {
    if (op.num_sites() != state.num_qubits()) {
        throw std::invalid_argument("operator acts on " + std::to_string(op.num_sites()) + " sites but state has " +
                                    std::to_string(state.num_qubits()) + " qubits");
    }
    ProductPhaseTable table(op);
    const auto &a = state.amplitudes();
    uint64_t f = table.flip();
    cplx t = 0;
    for (uint64_t x = 0; x < a.size(); x++) {
        t += std::conj(a[x ^ f]) * table.phase(x) * a[x];
    }
    return t.real();
}

std::pair<int, StateVector> project_measure(StateVector state, uint32_t q, const Mat2 &u, Rng &rng) {
    state.apply(q, u.adjoint());
    size_t mask = size_t{1} << q;
    const auto &a = state.amplitudes();
    double p1 = 0;
    double total = 0;
    for (size_t i = 0; i < a.size(); i++) {
        double w = std::norm(a[i]);
        total += w;
        if (i & mask) {
            p1 += w;
        }
    }
    p1 /= total;
    int bit = uniform01(rng) < p1 ? 1 : 0;
    double p = bit ? p1 : 1 - p1;
    if (p < 1e-14) {
        throw std::underflow_error("measurement branch has negligible probability");
    }
    auto &amps = state.mutable_amplitudes();
    double scale = 1 / std::sqrt(p * total);
    for (size_t i = 0; i < amps.size(); i++) {
        amps[i] = ((i & mask) != 0) == (bit == 1) ? amps[i] * scale : 0;
    }
    return {bit, std::move(state)};
}

PhaseAlignedDiff phase_aligned_diff(const StateVector &a, const StateVector &b) {
    cplx ov = a.inner(b);
    cplx phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx{1, 0};
    double d = 0;
    for (size_t i = 0; i < a.dimension(); i++) {
        d = std::max(d, std::abs(b[i] - phase * a[i]));
    }
    return {d, phase};
}

}  // namespace mbqc
