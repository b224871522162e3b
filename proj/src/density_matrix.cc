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

#include "mbqc/density_matrix.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mbqc/product_operator.h"

namespace mbqc {

namespace {

void check_size(size_t q, size_t max_qubits) {
    if (q > max_qubits) {
        throw std::invalid_argument(
            "density matrix on " + std::to_string(q) + " qubits exceeds the cap of " + std::to_string(max_qubits));
    }
}

void check_probability(double p, const char *name) {
    if (!(p >= 0 && p <= 1)) {
        throw std::domain_error(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

DensityMatrix::DensityMatrix(size_t num_qubits, size_t max_qubits) : num_qubits_(num_qubits) {
    check_size(num_qubits, max_qubits);
    vec_ = StateVector(2 * num_qubits);
}

DensityMatrix DensityMatrix::zero(size_t num_qubits, size_t max_qubits) {
    DensityMatrix dm(num_qubits, max_qubits);
    dm.vec_.mutable_amplitudes()[0] = 0;
    return dm;
}

DensityMatrix DensityMatrix::from_pure(const StateVector &state, size_t max_qubits) {
    DensityMatrix dm = zero(state.num_qubits(), max_qubits);
    dm.accumulate(state, 1);
    return dm;
}

DensityMatrix DensityMatrix::maximally_mixed(size_t num_qubits, size_t max_qubits) {
    DensityMatrix dm = zero(num_qubits, max_qubits);
    size_t d = dm.dimension();
    for (size_t i = 0; i < d; i++) {
        dm.vec_.mutable_amplitudes()[i | (i << num_qubits)] = 1.0 / d;
    }
    return dm;
}

void DensityMatrix::check_qubit(uint32_t q) const {
    if (q >= num_qubits_) {
        throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits_) + " qubits");
    }
}

void DensityMatrix::apply(uint32_t q, const Mat2 &u) {
    check_qubit(q);
    vec_.apply(q, u);
    vec_.apply(q + num_qubits_, u.conj());
}

void DensityMatrix::apply(uint32_t a, uint32_t b, const Mat4 &u) {
    check_qubit(a);
    check_qubit(b);
    Mat4 uc = u;
    for (auto &e : uc.m) {
        e = std::conj(e);
    }
    vec_.apply(a, b, u);
    vec_.apply(a + num_qubits_, b + num_qubits_, uc);
}

void DensityMatrix::apply(const Gate &gate) {
    if (gate.kind == GateKind::CZ) {
        check_qubit(gate.q0);
        check_qubit(gate.q1);
        vec_.apply_cz(gate.q0, gate.q1);
        vec_.apply_cz(gate.q0 + num_qubits_, gate.q1 + num_qubits_);
    } else if (gate.is_two_qubit()) {
        apply(gate.q0, gate.q1, gate.matrix2());
    } else {
        apply(gate.q0, gate.matrix());
    }
}

void DensityMatrix::apply(const Circuit &circuit) {
    if (circuit.num_qubits != num_qubits_) {
        throw std::invalid_argument("circuit and density matrix sizes differ");
    }
    for (const auto &g : circuit.gates) {
        apply(g);
    }
}

void DensityMatrix::depolarize(uint32_t q, double gamma) {
    check_qubit(q);
    check_probability(gamma, "depolarizing gamma");
    auto &a = vec_.mutable_amplitudes();
    size_t rb = size_t{1} << q;
    size_t cb = size_t{1} << (q + num_qubits_);
    for (size_t i = 0; i < a.size(); i++) {
        if (i & (rb | cb)) {
            continue;
        }
        cplx b00 = a[i];
        cplx b11 = a[i | rb | cb];
        cplx mix = gamma * (b00 + b11) / 2.0;
        a[i] = (1 - gamma) * b00 + mix;
        a[i | rb | cb] = (1 - gamma) * b11 + mix;
        a[i | rb] *= 1 - gamma;
        a[i | cb] *= 1 - gamma;
    }
}

void DensityMatrix::dephase(uint32_t q, double xi) {
    check_qubit(q);
    check_probability(xi, "dephasing xi");
    auto &a = vec_.mutable_amplitudes();
    size_t rb = size_t{1} << q;
    size_t cb = size_t{1} << (q + num_qubits_);
    for (size_t i = 0; i < a.size(); i++) {
        if (((i & rb) != 0) != ((i & cb) != 0)) {
            a[i] *= 1 - xi;
        }
    }
}

void DensityMatrix::collective_dephase(std::span<const uint32_t> qubits, double sigma) {
    uint64_t mask = 0;
    for (auto q : qubits) {
        check_qubit(q);
        mask |= uint64_t{1} << q;
    }
    // Z-eigenphases differ by theta (w(r) - w(c)); the Gaussian average gives exp(-sigma^2 d^2 / 2).
    std::vector<double> factor(qubits.size() + 1);
    for (size_t d = 0; d < factor.size(); d++) {
        factor[d] = std::exp(-sigma * sigma * double(d * d) / 2);
    }
    auto &a = vec_.mutable_amplitudes();
    uint64_t row_mask = dimension() - 1;
    for (uint64_t i = 0; i < a.size(); i++) {
        int wr = std::popcount(i & row_mask & mask);
        int wc = std::popcount((i >> num_qubits_) & mask);
        a[i] *= factor[std::abs(wr - wc)];
    }
}

void DensityMatrix::accumulate(const StateVector &state, double weight) {
    if (state.num_qubits() != num_qubits_) {
        throw std::invalid_argument("state and density matrix sizes differ");
    }
    auto &a = vec_.mutable_amplitudes();
    size_t d = dimension();
    for (size_t c = 0; c < d; c++) {
        cplx cc = weight * std::conj(state[c]);
        for (size_t r = 0; r < d; r++) {
            a[r | (c << num_qubits_)] += state[r] * cc;
        }
    }
}

void DensityMatrix::scale(double factor) {
    for (auto &e : vec_.mutable_amplitudes()) {
        e *= factor;
    }
}

double DensityMatrix::trace() const {
    double t = 0;
    for (size_t i = 0; i < dimension(); i++) {
        t += entry(i, i).real();
    }
    return t;
}

double DensityMatrix::hermiticity_error() const {
    double e = 0;
    size_t d = dimension();
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c <= r; c++) {
            e = std::max(e, std::abs(entry(r, c) - std::conj(entry(c, r))));
        }
    }
    return e;
}

double DensityMatrix::fidelity(const StateVector &state) const {
    if (state.num_qubits() != num_qubits_) {
        throw std::invalid_argument("state and density matrix sizes differ");
    }
    size_t d = dimension();
    cplx t = 0;
    for (size_t c = 0; c < d; c++) {
        cplx row = 0;
        for (size_t r = 0; r < d; r++) {
            row += std::conj(state[r]) * entry(r, c);
        }
        t += row * state[c];
    }
    return t.real();
}

double DensityMatrix::frobenius_distance(const DensityMatrix &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("density matrix sizes differ");
    }
    double t = 0;
    const auto &a = vec_.amplitudes();
    const auto &b = other.vec_.amplitudes();
    for (size_t i = 0; i < a.size(); i++) {
        t += std::norm(a[i] - b[i]);
    }
    return std::sqrt(t);
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> p(dimension());
    for (size_t i = 0; i < p.size(); i++) {
        p[i] = entry(i, i).real();
    }
    return p;
}

std::vector<double> DensityMatrix::hadamard_basis_distribution() const {
    std::vector<cplx> a = vec_.amplitudes();
    hadamard_transform(a);
    std::vector<double> p(dimension());
    for (size_t i = 0; i < p.size(); i++) {
        p[i] = a[i | (i << num_qubits_)].real();
    }
    return p;
}

double DensityMatrix::expectation(const StabilizerElement &op) const {
    if (op.num_sites() != num_qubits_) {
        throw std::invalid_argument("operator acts on " + std::to_string(op.num_sites()) + " sites but density matrix has " +
                                    std::to_string(num_qubits_) + " qubits");
    }
    ProductPhaseTable table(op);
    uint64_t f = table.flip();
    cplx t = 0;
    for (uint64_t x = 0; x < dimension(); x++) {
        t += entry(x, x ^ f) * table.phase(x);
    }
    return t.real();
}

DensityMatrix apply_channel(DensityMatrix dm, uint32_t site, Channel channel) {
    if (channel.kind == ChannelKind::Depolarizing) {
        dm.depolarize(site, channel.p);
    } else {
        dm.dephase(site, channel.p);
    }
    return dm;
}

double expectation_product_operator(const DensityMatrix &dm, const StabilizerElement &op) {
    return dm.expectation(op);
}

}  // namespace mbqc
