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

#ifndef MBQC_NOISE_H
#define MBQC_NOISE_H

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbqc/circuit.h"
#include "mbqc/density_matrix.h"
#include "mbqc/lattice.h"
#include "mbqc/rng.h"

namespace mbqc {

enum class NoiseKind { None, Depolarizing, Dephasing, GaussianZ };

enum class NoiseScope {
    GateQubits,  // the qubits of the entangling gate just applied
    AllQubits,
};

/// Noise model and where it is placed in a circuit.
///
/// Placement slots are "after the preparation layer" (everything before the first entangling
/// gate) and "after each entangling gate" (CZ or MS). Defaults: Pauli noise acts on the gate
/// qubits after each entangling gate; GaussianZ acts on all qubits after preparation and after
/// each entangling gate.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::None;
    double gamma = 0;
    double xi = 0;
    double sigma = 0;
    bool correlated = false;
    size_t resample_every = 50;
    bool after_prep = false;
    bool after_entangler = true;
    NoiseScope scope = NoiseScope::GateQubits;

    static NoiseSpec none();
    static NoiseSpec depolarizing(double gamma);
    static NoiseSpec dephasing(double xi);
    static NoiseSpec gaussian_z(double sigma, bool correlated, size_t resample_every = 50);

    bool is_none() const;
    bool is_pauli() const {
        return kind == NoiseKind::Depolarizing || kind == NoiseKind::Dephasing;
    }
    /// Shots that share one noise realization: resample_every for GaussianZ, 1 otherwise.
    size_t shots_per_realization() const;
    /// Single-qubit Pauli error probabilities {X, Y, Z} per noise location.
    std::array<double, 3> pauli_probabilities() const;
    std::vector<std::string> violations() const;
    void validate() const;
    bool operator==(const NoiseSpec &) const = default;
};

std::string noise_kind_name(NoiseKind kind);

/// {"kind":"gaussian_z","sigma":0.0785,"correlated":false,"resample_every":50} and similar.
void to_json(nlohmann::json &j, const NoiseSpec &noise);
void from_json(const nlohmann::json &j, NoiseSpec &noise);

/// A noise location: applied after the first `position` gates of the circuit.
struct NoiseSlot {
    size_t position;
    std::vector<uint32_t> qubits;
};

std::vector<NoiseSlot> noise_slots(const Circuit &circuit, const NoiseSpec &noise);

/// One noise trajectory: the circuit with sampled Pauli errors or RZ(theta ~ N(0, sigma^2))
/// rotations inserted at every slot.
Circuit inject(const Circuit &circuit, const NoiseSpec &noise, Rng &rng);

struct ChannelStep {
    enum class Type { Gate, Depolarize, Dephase, CollectiveDephase };
    Type type;
    Gate gate;
    std::vector<uint32_t> qubits;
    double parameter = 0;
};

/// The circuit as a sequence of gates and exact channels for density-matrix evolution.
std::vector<ChannelStep> inject_channels(const Circuit &circuit, const NoiseSpec &noise);

void evolve(DensityMatrix &dm, const std::vector<ChannelStep> &plan);

/// Exact noisy output state of `circuit` on |0...0>.
DensityMatrix simulate_density(const Circuit &circuit, const NoiseSpec &noise, size_t max_qubits = kMaxDensityQubits);

/// Fitted constant in the depolarizing equivalent of Gaussian Z noise.
inline constexpr double kGaussianGammaConstant = 0.310;

/// Dephasing strength of uncorrelated Gaussian Z noise: 1 - exp(-sigma^2 / 2).
double effective_xi(double sigma);

/// Depolarizing equivalent of Gaussian Z noise: 1 - exp(-c sigma^2).
double effective_gamma(double sigma, double c = kGaussianGammaConstant);

/// Per-gate error rate of the white-noise model: 3 gamma / 4 (depolarizing), xi / 2 (dephasing),
/// 3 effective_gamma(sigma) / 4 (GaussianZ).
double noise_eta(const NoiseSpec &noise);

/// exp(-2 S eta) with S the number of lattice edges.
double dalzell_prediction(const LatticeSpec &lattice, double eta);

/// Least-squares fit of c in F(sigma) = exp(-2 S (3/4) (1 - exp(-c sigma^2))).
double fit_gamma_constant(std::span<const double> sigmas, std::span<const double> fidelities, size_t num_entanglers);

/// A Pauli error location of the CZ-level cluster circuit, expressed by its effect on the ideal
/// state: an X (Z) error there is equivalent to Z^{mask_x} (Z^{mask_z}) applied to the final
/// state, i.e. it XORs the mask into the Hadamard-basis outcome.
struct FrameSlot {
    uint32_t qubit;
    uint64_t mask_x;
    uint64_t mask_z;
};

/// Frame slots for Pauli noise on cluster_circuit(lattice, beta). Z rotations commute with both
/// CZ gates and the Pauli channels used here, so the slots do not depend on beta.
std::vector<FrameSlot> cluster_frame_slots(const LatticeSpec &lattice, const NoiseSpec &noise);

/// Exact distribution of the accumulated outcome flip mask under Pauli noise. Its value at 0 is
/// the fidelity of every noisy cluster state, and the noisy Hadamard distribution is the XOR
/// convolution of the ideal one with it.
std::vector<double> frame_mask_distribution(const LatticeSpec &lattice, const NoiseSpec &noise, size_t max_qubits = 20);

/// XOR convolution sum_b d(b) p(x ^ b).
std::vector<double> xor_convolve(const std::vector<double> &p, const std::vector<double> &d);

}  // namespace mbqc

#endif
