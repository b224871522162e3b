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

#include "mbqc/preparation.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace mbqc {

namespace {

double plus_probability(double expectation) {
    return std::clamp((1 + expectation) / 2, 0.0, 1.0);
}

}  // namespace

std::vector<double> cumulative(const std::vector<double> &p) {
    std::vector<double> c(p.size());
    double t = 0;
    for (size_t i = 0; i < p.size(); i++) {
        t += std::max(0.0, p[i]);
        c[i] = t;
    }
    return c;
}

uint64_t sample_cdf(const std::vector<double> &cdf, Rng &rng) {
    double u = uniform01(rng) * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        --it;
    }
    return static_cast<uint64_t>(it - cdf.begin());
}

PurePreparation::PurePreparation(StateVector state)
    : state_(std::move(state)), cdf_(cumulative(hadamard_basis_distribution(state_))) {
}

uint64_t PurePreparation::measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const {
    return binomial(rng, shots, plus_probability(expectation_product_operator(state_, op)));
}

void PurePreparation::sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const {
    for (uint64_t s = 0; s < shots; s++) {
        out.push_back(sample_cdf(cdf_, rng));
    }
}

MixedPreparation::MixedPreparation(DensityMatrix rho)
    : rho_(std::move(rho)), cdf_(cumulative(rho_.hadamard_basis_distribution())) {
}

uint64_t MixedPreparation::measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const {
    return binomial(rng, shots, plus_probability(rho_.expectation(op)));
}

void MixedPreparation::sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const {
    for (uint64_t s = 0; s < shots; s++) {
        out.push_back(sample_cdf(cdf_, rng));
    }
}

TrajectoryPreparation::TrajectoryPreparation(Circuit circuit, NoiseSpec noise, size_t max_qubits)
    : circuit_(std::move(circuit)), noise_(noise), max_qubits_(max_qubits) {
    noise_.validate();
    if (circuit_.num_qubits > max_qubits_) {
        throw std::invalid_argument("circuit exceeds the dense simulation cap");
    }
    if (noise_.is_none()) {
        noiseless_ = std::make_unique<PurePreparation>(apply_circuit(StateVector(circuit_.num_qubits), circuit_));
    }
}

StateVector TrajectoryPreparation::realize(Rng &rng) const {
    return apply_circuit(StateVector(circuit_.num_qubits), inject(circuit_, noise_, rng));
}

uint64_t TrajectoryPreparation::measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const {
    if (noiseless_) {
        return noiseless_->measure_plus_count(op, shots, rng);
    }
    uint64_t plus = 0;
    size_t group = noise_.shots_per_realization();
    for (uint64_t done = 0; done < shots; done += group) {
        uint64_t k = std::min<uint64_t>(group, shots - done);
        StateVector s = realize(rng);
        plus += binomial(rng, k, plus_probability(expectation_product_operator(s, op)));
    }
    return plus;
}

void TrajectoryPreparation::sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const {
    if (noiseless_) {
        noiseless_->sample_hadamard(shots, rng, out);
        return;
    }
    size_t group = noise_.shots_per_realization();
    for (uint64_t done = 0; done < shots; done += group) {
        uint64_t k = std::min<uint64_t>(group, shots - done);
        auto cdf = cumulative(hadamard_basis_distribution(realize(rng)));
        for (uint64_t s = 0; s < k; s++) {
            out.push_back(sample_cdf(cdf, rng));
        }
    }
}

std::vector<double> draw_gaussian_offsets(const LatticeSpec &lattice, const NoiseSpec &noise, Rng &rng) {
    size_t n = lattice.num_sites();
    std::vector<double> delta(n, 0);
    if (noise.kind != NoiseKind::GaussianZ || noise.sigma == 0) {
        return delta;
    }
    auto slot = [&](const std::vector<size_t> &qubits) {
        double shared = noise.sigma * standard_normal(rng);
        for (size_t q : qubits) {
            delta[q] += noise.correlated ? shared : noise.sigma * standard_normal(rng);
        }
    };
    std::vector<size_t> all(n);
    for (size_t q = 0; q < n; q++) {
        all[q] = q;
    }
    if (noise.after_prep) {
        slot(all);
    }
    if (noise.after_entangler) {
        for (const auto &e : lattice.edges()) {
            if (noise.scope == NoiseScope::GateQubits) {
                slot({e.a, e.b});
            } else {
                slot(all);
            }
        }
    }
    return delta;
}

ClusterFramePreparation::ClusterFramePreparation(LatticeSpec lattice, AngleGrid beta, NoiseSpec noise, size_t max_qubits)
    : lattice_(lattice), beta_(std::move(beta)), noise_(noise), max_qubits_(max_qubits) {
    noise_.validate();
    if (noise_.kind != NoiseKind::GaussianZ) {
        slots_ = cluster_frame_slots(lattice_, noise_);
    }
    ideal_ = cluster_state(lattice_, beta_, max_qubits_);
    cdf_ = cumulative(hadamard_basis_distribution(ideal_));
}

uint64_t ClusterFramePreparation::draw_mask(Rng &rng) const {
    auto p = noise_.pauli_probabilities();
    double pxy = p[0] + p[1];
    double ptot = pxy + p[2];
    uint64_t mask = 0;
    for (const auto &s : slots_) {
        double u = uniform01(rng);
        if (u >= ptot) {
            continue;
        }
        if (u < p[0]) {
            mask ^= s.mask_x;
        } else if (u < pxy) {
            mask ^= s.mask_x ^ s.mask_z;
        } else {
            mask ^= s.mask_z;
        }
    }
    return mask;
}

uint64_t ClusterFramePreparation::measure_plus_count(const StabilizerElement &op, uint64_t shots, Rng &rng) const {
    if (noise_.kind == NoiseKind::GaussianZ && noise_.sigma > 0) {
        uint64_t plus = 0;
        size_t group = noise_.shots_per_realization();
        auto base = beta_.angles();
        for (uint64_t done = 0; done < shots; done += group) {
            uint64_t k = std::min<uint64_t>(group, shots - done);
            auto delta = draw_gaussian_offsets(lattice_, noise_, rng);
            for (size_t q = 0; q < delta.size(); q++) {
                delta[q] += base[q];
            }
            StateVector s = cluster_state_with_angles(lattice_, delta, max_qubits_);
            plus += binomial(rng, k, plus_probability(expectation_product_operator(s, op)));
        }
        return plus;
    }
    double e0 = expectation_product_operator(ideal_, op);
    if (slots_.empty()) {
        return binomial(rng, shots, plus_probability(e0));
    }
    // Z^{mask} anticommutes with the operator iff it overlaps its flipping sites.
    uint64_t flips = op.flip_mask();
    double p_same = plus_probability(e0);
    double p_flip = plus_probability(-e0);
    uint64_t plus = 0;
    for (uint64_t s = 0; s < shots; s++) {
        uint64_t mask = draw_mask(rng);
        double p = (std::popcount(mask & flips) & 1) ? p_flip : p_same;
        if (p >= 1) {
            plus++;
        } else if (p > 0) {
            plus += uniform01(rng) < p;
        }
    }
    return plus;
}

void ClusterFramePreparation::sample_hadamard(uint64_t shots, Rng &rng, std::vector<uint64_t> &out) const {
    if (noise_.kind == NoiseKind::GaussianZ && noise_.sigma > 0) {
        size_t group = noise_.shots_per_realization();
        auto base = beta_.angles();
        for (uint64_t done = 0; done < shots; done += group) {
            uint64_t k = std::min<uint64_t>(group, shots - done);
            auto delta = draw_gaussian_offsets(lattice_, noise_, rng);
            for (size_t q = 0; q < delta.size(); q++) {
                delta[q] += base[q];
            }
            auto cdf = cumulative(hadamard_basis_distribution(cluster_state_with_angles(lattice_, delta, max_qubits_)));
            for (uint64_t s = 0; s < k; s++) {
                out.push_back(sample_cdf(cdf, rng));
            }
        }
        return;
    }
    for (uint64_t s = 0; s < shots; s++) {
        uint64_t x = sample_cdf(cdf_, rng);
        out.push_back(slots_.empty() ? x : x ^ draw_mask(rng));
    }
}

DensityMatrix cluster_density(const LatticeSpec &lattice, const AngleGrid &beta, const NoiseSpec &noise) {
    return simulate_density(cluster_circuit(lattice, beta, true), noise);
}

PreparationFactory cluster_preparation_factory(const LatticeSpec &lattice, const NoiseSpec &noise, PrepMode mode) {
    noise.validate();
    switch (mode) {
        case PrepMode::Frame:
            return [lattice, noise](const AngleGrid &beta) -> std::unique_ptr<Preparation> {
                return std::make_unique<ClusterFramePreparation>(lattice, beta, noise);
            };
        case PrepMode::Trajectory:
            return [lattice, noise](const AngleGrid &beta) -> std::unique_ptr<Preparation> {
                return std::make_unique<TrajectoryPreparation>(cluster_circuit(lattice, beta, true), noise);
            };
        case PrepMode::Density:
            return [lattice, noise](const AngleGrid &beta) -> std::unique_ptr<Preparation> {
                return std::make_unique<MixedPreparation>(cluster_density(lattice, beta, noise));
            };
    }
    throw std::invalid_argument("unknown preparation mode");
}

}  // namespace mbqc
