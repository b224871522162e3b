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

#ifndef MBQC_STATE_VECTOR_H
#define MBQC_STATE_VECTOR_H

#include <cstdint>
#include <span>
#include <vector>

#include "mbqc/circuit.h"
#include "mbqc/gates.h"
#include "mbqc/lattice.h"
#include "mbqc/rng.h"

namespace mbqc {

/// Dense pure state. Amplitude index bit k is qubit k (qubit 0 least significant).
class StateVector {
   public:
    StateVector() = default;
    /// |0...0> on num_qubits qubits.
    explicit StateVector(size_t num_qubits);
    static StateVector from_amplitudes(std::vector<cplx> amplitudes);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dimension() const {
        return amps_.size();
    }
    const std::vector<cplx> &amplitudes() const {
        return amps_;
    }
    std::vector<cplx> &mutable_amplitudes() {
        return amps_;
    }
    cplx operator[](uint64_t index) const {
        return amps_[index];
    }

    void apply(uint32_t q, const Mat2 &u);
    /// u acts with qubit a as its low index bit.
    void apply(uint32_t a, uint32_t b, const Mat4 &u);
    void apply_cz(uint32_t a, uint32_t b);
    /// Multiplies |1> on qubit q by -1 and |0> unchanged, i.e. Pauli Z.
    void apply_z(uint32_t q);
    void apply(const Gate &gate);
    void apply(const Circuit &circuit);

    double norm_squared() const;
    void normalize();
    /// <this|other>
    cplx inner(const StateVector &other) const;
    std::vector<double> probabilities() const;

    /// Appends a new most-significant qubit in state u|0>.
    void append_qubit(const Mat2 &u);
    /// Projects qubit q onto |bit>, returning the branch probability, and removes the qubit
    /// (higher qubits shift down by one). Leaves the state unnormalized.
    double project_out(uint32_t q, int bit);

   private:
    void check_qubit(uint32_t q) const;
    size_t num_qubits_ = 0;
    std::vector<cplx> amps_;
};

StateVector apply_circuit(StateVector state, const Circuit &circuit);

/// |<x| H^{(x)q} |psi>|^2 for every x.
std::vector<double> hadamard_basis_distribution(const StateVector &state);

/// In-place H on every qubit.
void hadamard_transform(std::vector<cplx> &amplitudes);

/// Walsh-Hadamard transform without normalization: out[y] = sum_x (-1)^{x.y} in[x].
void walsh_hadamard(std::vector<double> &values);

double expectation_product_operator(const StateVector &state, const StabilizerElement &op);

/// Measures qubit q in the basis {u|0>, u|1>}. Returns the outcome and the renormalized
/// post-measurement state, in which qubit q is left in the computational state |bit>.
/// Throws std::underflow_error if the sampled branch has probability below 1e-14.
std::pair<int, StateVector> project_measure(StateVector state, uint32_t q, const Mat2 &u, Rng &rng);

/// Largest |a_i - b_i| after removing the relative global phase; also returns that phase.
struct PhaseAlignedDiff {
    double max_diff;
    cplx phase;  // b ~ phase * a
};
PhaseAlignedDiff phase_aligned_diff(const StateVector &a, const StateVector &b);

}  // namespace mbqc

#endif
