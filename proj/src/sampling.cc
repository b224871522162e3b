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

#include "mbqc/sampling.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "mbqc/parallel.h"

namespace mbqc {

std::string outcome_to_string(uint64_t outcome, size_t num_sites) {
    std::string s(num_sites, '0');
    for (size_t k = 0; k < num_sites; k++) {
        if ((outcome >> k) & 1) {
            s[num_sites - 1 - k] = '1';
        }
    }
    return s;
}

uint64_t outcome_from_string(std::string_view text, size_t num_sites) {
    if (text.size() != num_sites) {
        throw std::invalid_argument(
            "outcome string has length " + std::to_string(text.size()) + ", expected " + std::to_string(num_sites));
    }
    uint64_t x = 0;
    for (size_t i = 0; i < text.size(); i++) {
        char c = text[i];
        if (c != '0' && c != '1') {
            throw std::invalid_argument("outcome string contains a character other than 0 or 1");
        }
        if (c == '1') {
            x |= uint64_t{1} << (num_sites - 1 - i);
        }
    }
    return x;
}

std::string SampleBatch::outcome_string(size_t shot) const {
    return outcome_to_string(outcomes.at(shot), lattice.num_sites());
}

nlohmann::json SampleBatch::header_json() const {
    nlohmann::json h;
    h["type"] = "header";
    h["format"] = "mbqc-samples";
    h["version"] = 1;
    h["lattice"] = lattice;
    h["beta"] = beta;
    h["noise"] = noise;
    h["seed"] = seed;
    h["register_size"] = register_size;
    h["shots"] = outcomes.size();
    h["bit_order"] = "site 0 is the least significant (rightmost) bit";
    return h;
}

size_t shot_block_size(const NoiseSpec &noise) {
    size_t group = noise.shots_per_realization();
    return group * std::max<size_t>(1, 1024 / group);
}

std::vector<uint64_t> sample_preparation(const Preparation &prep, uint64_t shots, uint64_t seed, size_t threads, size_t block) {
    size_t blocks = (shots + block - 1) / block;
    std::vector<std::vector<uint64_t>> parts(blocks);
    parallel_for(blocks, threads, [&](size_t b) {
        Rng rng = make_rng(seed, "shots", b);
        uint64_t k = std::min<uint64_t>(block, shots - b * block);
        parts[b].reserve(k);
        prep.sample_hadamard(k, rng, parts[b]);
    });
    std::vector<uint64_t> out;
    out.reserve(shots);
    for (auto &p : parts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

SampleBatch sample_full(
    const LatticeSpec &lattice, const AngleGrid &beta, uint64_t shots, const NoiseSpec &noise, uint64_t seed,
    const SamplingOptions &options) {
    if (beta.size() != lattice.num_sites()) {
        throw std::invalid_argument("angle grid size does not match lattice");
    }
    auto prep = cluster_preparation_factory(lattice, noise, options.mode)(beta);
    SampleBatch batch{lattice, beta, noise, seed, 0, {}};
    batch.outcomes = sample_preparation(*prep, shots, seed, options.threads, shot_block_size(noise));
    return batch;
}

std::vector<StreamStep> streaming_schedule(const LatticeSpec &lattice, size_t register_size) {
    if (register_size < lattice.n + 1) {
        throw std::invalid_argument(
            "register size " + std::to_string(register_size) + " is below the minimum n + 1 = " + std::to_string(lattice.n + 1));
    }
    size_t n = lattice.num_sites();
    auto last_neighbor = [&](size_t s) {
        auto nb = lattice.neighbors(s);
        size_t hi = s;
        for (size_t t : nb) {
            hi = std::max(hi, t);
        }
        return hi;
    };
    std::vector<StreamStep> steps;
    size_t next_measure = 0;
    size_t live = 0;
    for (size_t j = 0; j < n; j++) {
        steps.push_back({StreamStep::Type::Add, j});
        if (++live > register_size) {
            throw std::logic_error("streaming schedule exceeded the register");
        }
        auto nb = lattice.neighbors(j);
        std::sort(nb.begin(), nb.end());
        for (size_t i : nb) {
            if (i < j) {
                steps.push_back({StreamStep::Type::Entangle, j, i});
            }
        }
        while (next_measure <= j && last_neighbor(next_measure) <= j) {
            steps.push_back({StreamStep::Type::Measure, next_measure++});
            live--;
        }
    }
    return steps;
}

namespace {

size_t position_of(const std::vector<size_t> &live, size_t site) {
    auto it = std::find(live.begin(), live.end(), site);
    if (it == live.end()) {
        throw std::logic_error("site is not live");
    }
    return static_cast<size_t>(it - live.begin());
}

Mat2 site_preparation(double angle) {
    return gate_matrix::rz(angle) * gate_matrix::hadamard();
}

void apply_pauli_error(StateVector &sv, uint32_t q, const std::array<double, 3> &p, Rng &rng) {
    double u = uniform01(rng);
    if (u < p[0]) {
        sv.apply(q, gate_matrix::pauli_x());
    } else if (u < p[0] + p[1]) {
        sv.apply(q, gate_matrix::pauli_y());
    } else if (u < p[0] + p[1] + p[2]) {
        sv.apply_z(q);
    }
}

/// Hadamard-basis measurement of qubit q followed by its removal.
int measure_and_remove(StateVector &sv, uint32_t q, Rng &rng) {
    sv.apply(q, gate_matrix::hadamard());
    const auto &a = sv.amplitudes();
    size_t mask = size_t{1} << q;
    double p1 = 0;
    double total = 0;
    for (size_t i = 0; i < a.size(); i++) {
        double w = std::norm(a[i]);
        total += w;
        if (i & mask) {
            p1 += w;
        }
    }
    int bit = uniform01(rng) * total < p1 ? 1 : 0;
    double p = sv.project_out(q, bit);
    if (p < 1e-14 * total) {
        throw std::underflow_error("measurement branch has negligible probability");
    }
    double scale = 1 / std::sqrt(p);
    for (auto &v : sv.mutable_amplitudes()) {
        v *= scale;
    }
    return bit;
}

}  // namespace

SampleBatch sample_recycled(
    const LatticeSpec &lattice, const AngleGrid &beta, size_t register_size, uint64_t shots, const NoiseSpec &noise,
    uint64_t seed, const SamplingOptions &options, RecyclingStats *stats) {
    noise.validate();
    size_t n = lattice.num_sites();
    if (beta.size() != n) {
        throw std::invalid_argument("angle grid size does not match lattice");
    }
    if (n > 64) {
        throw std::invalid_argument("outcome words hold at most 64 sites");
    }
    if (noise.is_pauli() && !noise.is_none() && noise.scope != NoiseScope::GateQubits) {
        throw std::invalid_argument("streaming supports Pauli noise on gate qubits only");
    }
    auto steps = streaming_schedule(lattice, register_size);
    auto base = beta.angles();
    auto probs = noise.pauli_probabilities();
    bool pauli = noise.is_pauli() && !noise.is_none();
    bool gaussian = noise.kind == NoiseKind::GaussianZ && noise.sigma > 0;

    size_t block = shot_block_size(noise);
    size_t blocks = (shots + block - 1) / block;
    std::vector<std::vector<uint64_t>> parts(blocks);
    std::vector<size_t> peaks(blocks, 0);
    parallel_for(blocks, options.threads, [&](size_t b) {
        Rng rng = make_rng(seed, "recycled-shots", b);
        uint64_t k = std::min<uint64_t>(block, shots - b * block);
        std::vector<double> angles = base;
        for (uint64_t s = 0; s < k; s++) {
            if (gaussian && s % noise.resample_every == 0) {
                auto delta = draw_gaussian_offsets(lattice, noise, rng);
                for (size_t q = 0; q < n; q++) {
                    angles[q] = base[q] + delta[q];
                }
            }
            StateVector sv(0);
            std::vector<size_t> live;
            uint64_t outcome = 0;
            for (const auto &step : steps) {
                switch (step.type) {
                    case StreamStep::Type::Add:
                        sv.append_qubit(site_preparation(angles[step.site]));
                        live.push_back(step.site);
                        peaks[b] = std::max(peaks[b], live.size());
                        if (pauli && noise.after_prep) {
                            apply_pauli_error(sv, static_cast<uint32_t>(live.size() - 1), probs, rng);
                        }
                        break;
                    case StreamStep::Type::Entangle: {
                        auto qa = static_cast<uint32_t>(position_of(live, step.other));
                        auto qb = static_cast<uint32_t>(position_of(live, step.site));
                        sv.apply_cz(qa, qb);
                        if (pauli && noise.after_entangler) {
                            apply_pauli_error(sv, qa, probs, rng);
                            apply_pauli_error(sv, qb, probs, rng);
                        }
                        break;
                    }
                    case StreamStep::Type::Measure: {
                        size_t pos = position_of(live, step.site);
                        int bit = measure_and_remove(sv, static_cast<uint32_t>(pos), rng);
                        live.erase(live.begin() + static_cast<std::ptrdiff_t>(pos));
                        outcome |= uint64_t(bit) << step.site;
                        break;
                    }
                }
            }
            parts[b].push_back(outcome);
        }
    });

    SampleBatch batch{lattice, beta, noise, seed, register_size, {}};
    batch.outcomes.reserve(shots);
    for (auto &p : parts) {
        batch.outcomes.insert(batch.outcomes.end(), p.begin(), p.end());
    }
    if (stats) {
        stats->peak_live_qubits = peaks.empty() ? 0 : *std::max_element(peaks.begin(), peaks.end());
        // Register slots: a freed slot goes to the back of the queue, new sites take the front.
        std::deque<size_t> free_slots;
        for (size_t r = 0; r < register_size; r++) {
            free_slots.push_back(r);
        }
        std::vector<bool> used(register_size, false);
        stats->slot_of_site.assign(n, 0);
        uint64_t reuses = 0;
        for (const auto &step : steps) {
            if (step.type == StreamStep::Type::Add) {
                size_t slot = free_slots.front();
                free_slots.pop_front();
                reuses += used[slot];
                used[slot] = true;
                stats->slot_of_site[step.site] = slot;
            } else if (step.type == StreamStep::Type::Measure) {
                free_slots.push_back(stats->slot_of_site[step.site]);
            }
        }
        stats->qubit_reuses = reuses * shots;
    }
    return batch;
}

namespace {

void enumerate_branches(
    const std::vector<StreamStep> &steps, size_t index, StateVector sv, std::vector<size_t> live, double prob,
    uint64_t outcome, const std::vector<double> &angles, std::vector<double> &out) {
    for (; index < steps.size(); index++) {
        const auto &step = steps[index];
        if (step.type == StreamStep::Type::Add) {
            sv.append_qubit(site_preparation(angles[step.site]));
            live.push_back(step.site);
        } else if (step.type == StreamStep::Type::Entangle) {
            sv.apply_cz(static_cast<uint32_t>(position_of(live, step.other)), static_cast<uint32_t>(position_of(live, step.site)));
        } else {
            auto pos = static_cast<uint32_t>(position_of(live, step.site));
            sv.apply(pos, gate_matrix::hadamard());
            std::vector<size_t> rest = live;
            rest.erase(rest.begin() + pos);
            for (int bit = 0; bit < 2; bit++) {
                StateVector branch = sv;
                double p = branch.project_out(pos, bit);
                if (p <= 1e-300) {
                    continue;
                }
                double scale = 1 / std::sqrt(p);
                for (auto &v : branch.mutable_amplitudes()) {
                    v *= scale;
                }
                enumerate_branches(
                    steps, index + 1, std::move(branch), rest, prob * p, outcome | (uint64_t(bit) << step.site), angles, out);
            }
            return;
        }
    }
    out[outcome] += prob;
}

}  // namespace

std::vector<double> exact_streaming_distribution(const LatticeSpec &lattice, const AngleGrid &beta, size_t register_size) {
    size_t n = lattice.num_sites();
    if (n > 12) {
        throw std::invalid_argument("exact streaming enumeration is limited to 12 sites");
    }
    if (beta.size() != n) {
        throw std::invalid_argument("angle grid size does not match lattice");
    }
    auto steps = streaming_schedule(lattice, register_size);
    std::vector<double> out(size_t{1} << n, 0.0);
    enumerate_branches(steps, 0, StateVector(0), {}, 1.0, 0, beta.angles(), out);
    return out;
}

}  // namespace mbqc
