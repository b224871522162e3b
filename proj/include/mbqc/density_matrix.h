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

#ifndef MBQC_DENSITY_MATRIX_H
#define MBQC_DENSITY_MATRIX_H

#include <span>
#include <vector>

#include "mbqc/circuit.h"
#include "mbqc/lattice.h"
#include "mbqc/state_vector.h"
#include "mbqc/tolerances.h"

namespace mbqc {

/// Dense density matrix on q qubits, stored as a vector over 2q qubits: entry (r, c) lives at
/// index r | (c << q). A gate U on qubit k acts as U on bit k and conj(U) on bit k + q.
class DensityMatrix {
   public:
    DensityMatrix() = default;
    /// |0...0><0...0|.
    explicit DensityMatrix(size_t num_qubits, size_t max_qubits = kMaxDensityQubits);
    static DensityMatrix from_pure(const StateVector &state, size_t max_qubits = kMaxDensityQubits);
    static DensityMatrix maximally_mixed(size_t num_qubits, size_t max_qubits = kMaxDensityQubits);
    /// All-zero matrix, for accumulating trajectory averages.
    static DensityMatrix zero(size_t num_qubits, size_t max_qubits = kMaxDensityQubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dimension() const {
        return size_t{1} << num_qubits_;
    }
    cplx entry(uint64_t row, uint64_t col) const {
        return vec_[row | (col << num_qubits_)];
    }

    void apply(uint32_t q, const Mat2 &u);
    void apply(uint32_t a, uint32_t b, const Mat4 &u);
    void apply(const Gate &gate);
    void apply(const Circuit &circuit);

    /// (1 - gamma) rho + gamma tr_q(rho) (x) I/2, equivalently (1 - 3gamma/4) rho + gamma/4 (X rho X + Y rho Y + Z rho Z).
    void depolarize(uint32_t q, double gamma);
    /// (1 - xi) rho + xi diag_q(rho), equivalently (1 - xi/2) rho + xi/2 Z rho Z.
    void dephase(uint32_t q, double xi);
    /// Average of exp(-i theta sum_{k in qubits} Z_k / 2) rho (...)^dagger over theta ~ N(0, sigma^2).
    void collective_dephase(std::span<const uint32_t> qubits, double sigma);

    /// rho += weight |psi><psi|.
    void accumulate(const StateVector &state, double weight);
    void scale(double factor);

    double trace() const;
    double hermiticity_error() const;
    /// <psi|rho|psi>.
    double fidelity(const StateVector &state) const;
    double frobenius_distance(const DensityMatrix &other) const;
    std::vector<double> hadamard_basis_distribution() const;
    std::vector<double> diagonal() const;
    double expectation(const StabilizerElement &op) const;

   private:
    void check_qubit(uint32_t q) const;
    size_t num_qubits_ = 0;
    StateVector vec_;
};

enum class ChannelKind { Depolarizing, Dephasing };

struct Channel {
    ChannelKind kind;
    double p;  // gamma or xi
};

DensityMatrix apply_channel(DensityMatrix dm, uint32_t site, Channel channel);

double expectation_product_operator(const DensityMatrix &dm, const StabilizerElement &op);

}  // namespace mbqc

#endif
