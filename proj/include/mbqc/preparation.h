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

#ifndef MBQC_PREPARATION_H
#define MBQC_PREPARATION_H

#include <functional>
#include <memory>
#include <vector>

#include "mbqc/circuit.h"
#include "mbqc/density_matrix.h"
#include "mbqc/lattice.h"
#include "mbqc/noise.h"
#include "mbqc/rng.h"
#include "mbqc/state_vector.h"

namespace mbqc {

/// A (possibly noisy) source of copies of one prepared state. Estimators only see single-shot
/// measurement outcomes drawn from it.
class Preparation {
   public:
    virtual ~Preparation() = default;
    virtual size_t num_qubits() const = 0;
    /// Number of +1 outcomes among `shots` single-shot measurements of the product operator.
    virtual uint64_t measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const = 0;
    /// Appends `shots` Hadamard-basis outcomes (bit k = qubit k) to out.
    virtual void sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const = 0;
};

using PreparationFactory = std::function<std::unique_ptr<Preparation>(const AngleGrid &)>;

/// Draws an index from a cumulative distribution.
uint64_t sample_cdf(const std::vector<double> &cdf, Rng &rng);
std::vector<double> cumulative(const std::vector<double> &p);

class PurePreparation final : public Preparation {
   public:
    explicit PurePreparation(StateVector state);
    size_t num_qubits() const override {
        return state_.num_qubits();
    }
    uint64_t measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const override;
    void sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const override;
    const StateVector &state() const {
        return state_;
    }

   private:
    StateVector state_;
    std::vector<double> cdf_;
};

class MixedPreparation final : public Preparation {
   public:
    explicit MixedPreparation(DensityMatrix rho);
    size_t num_qubits() const override {
        return rho_.num_qubits();
    }
    uint64_t measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const override;
    void sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const override;
    const DensityMatrix &rho() const {
        return rho_;
    }

   private:
    DensityMatrix rho_;
    std::vector<double> cdf_;
};

/// Runs the circuit on |0...0> as a statevector, inserting a freshly sampled noise realization
/// (see inject) every noise.shots_per_realization() shots.
class TrajectoryPreparation final : public Preparation {
   public:
    TrajectoryPreparation(Circuit circuit, NoiseSpec noise, size_t max_qubits = kMaxDenseQubits);
    size_t num_qubits() const override {
        return circuit_.num_qubits;
    }
    uint64_t measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const override;
    void sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const override;
    StateVector realize(Rng &rng) const;

   private:
    Circuit circuit_;
    NoiseSpec noise_;
    size_t max_qubits_;
    std::unique_ptr<PurePreparation> noiseless_;
};

/// Fast path for the CZ-level cluster circuit. Pauli noise is tracked as an outcome flip mask
/// (see cluster_frame_slots); Gaussian Z noise shifts the per-site angles.
class ClusterFramePreparation final : public Preparation {
   public:
    ClusterFramePreparation(LatticeSpec lattice, AngleGrid beta, NoiseSpec noise, size_t max_qubits = kMaxDenseQubits);
    size_t num_qubits() const override {
        return lattice_.num_sites();
    }
    uint64_t measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const override;
    void sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const override;
    /// One Pauli realization as an outcome flip mask.
    uint64_t draw_mask(Rng &rng) const;

   private:
    LatticeSpec lattice_;
    AngleGrid beta_;
    NoiseSpec noise_;
    size_t max_qubits_;
    std::vector<FrameSlot> slots_;
    StateVector ideal_;
    std::vector<double> cdf_;
};

/// Per-site angle offsets from Gaussian Z noise at the slots of the CZ-level cluster circuit.
std::vector<double> draw_gaussian_offsets(const LatticeSpec &lattice, const NoiseSpec &noise, Rng &rng);

enum class PrepMode {
    Frame,       // ClusterFramePreparation
    Trajectory,  // TrajectoryPreparation on cluster_circuit
    Density,     // MixedPreparation from the exact channel evolution of cluster_circuit
};

PreparationFactory cluster_preparation_factory(const LatticeSpec &lattice, const NoiseSpec &noise, PrepMode mode);

/// Exact noisy state of the CZ-level cluster circuit (Z rotations before the CZ layer).
DensityMatrix cluster_density(const LatticeSpec &lattice, const AngleGrid &beta, const NoiseSpec &noise);

}  // namespace mbqc

#endif
